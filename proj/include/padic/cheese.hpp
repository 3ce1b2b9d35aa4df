#pragma once

#include "padic/ratfun.hpp"
#include "padic/valuation.hpp"

#include <vector>

namespace padic {

/// Open disc |x - center| < p^{e} removed from the outer disc.
struct Hole {
    Q center;
    Q e;
};

/**
 * Closed disc |x - center| <= p^{e0} with finitely many open holes.
 *
 * Radii are p^{e} with e rational; norms are reported as valuations,
 * v = -log_p |.|.
 */
class Cheese {
public:
    Cheese(long p, const Q& center, const Q& e0, std::vector<Hole> holes = {});

    static Cheese unit_disc(long p) { return Cheese(p, 0, 0); }
    /// |x - center| = p^{e}
    static Cheese circle(long p, const Q& center, const Q& e) { return Cheese(p, center, e, {{center, e}}); }

    long p() const { return p_; }
    const Q& center() const { return c0_; }
    const Q& e0() const { return e0_; }
    const std::vector<Hole>& holes() const { return holes_; }

    /// log_p rho(X): the smallest hole radius, or the outer radius when there are no holes.
    Q rho_exp() const;
    /// log_p r(X) = -log_p rho(X) - 1/(p-1).
    Q r_exp() const;
    /// r > r(X).
    bool admissible(const Q& r_exp) const { return r_exp > this->r_exp(); }
    /// r >= r(X).
    bool dagger_admissible(const Q& r_exp) const { return r_exp >= this->r_exp(); }

    /// Index of the hole containing z, -1 if z lies on X, -2 if outside the outer disc.
    int locate(const Q& z) const;
    /// Image under an upper-triangular map acting on points.
    Cheese transform(const MobiusMap& g) const;
    /// The same cheese with one more hole.
    Cheese with_hole(const Hole& h) const;

private:
    long p_;
    Q c0_, e0_;
    std::vector<Hole> holes_;
};

/**
 * Sup norm |u|_X as a valuation, from the Mittag-Leffler decomposition.
 *
 * Poles must lie in holes or outside the outer disc; throws std::domain_error otherwise.
 */
Valuation sup_norm(const RationalFunction& u, const Cheese& X);

struct DividedPowerNorm {
    /// Valuation of ||d^[n]|| = rho^{-n}.
    Valuation op_norm;
    /// Witness f with |d^[n] f| / |f| equal to the operator norm.
    RationalFunction witness;
    Valuation witness_ratio;
};

DividedPowerNorm divided_power_norm_check(const Cheese& X, long n);

}  // namespace padic
