#ifndef BETADIM_LOCAL_IFS_HPP
#define BETADIM_LOCAL_IFS_HPP

#include "betadim/covers.hpp"

namespace betadim {

/// Finite union of disjoint closed intervals inside [0,1], exact endpoints,
/// sorted and merged (touching intervals coalesce).
class interval_union {
  public:
    interval_union() = default;
    explicit interval_union(std::vector<exact_interval> parts);
    static interval_union unit();

    const std::vector<exact_interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    size_t size() const { return parts_.size(); }
    bool contains(const real_alg& x) const;
    real_alg sup() const;
    real_alg inf() const;

    /// Exact distance from a point to the union (0 when inside).
    real_alg distance(const real_alg& x) const;
    /// Every part of this union lies inside some part of the other.
    bool subset_of(const interval_union& other) const;

    interval_union scaled_translated(const real_alg& scale, const real_alg& offset) const;
    interval_union clipped(const real_alg& lo, const real_alg& hi) const;
    static interval_union merge(const interval_union& a, const interval_union& b);

  private:
    std::vector<exact_interval> parts_;
};

/// Exact Hausdorff distance between two non-empty interval unions.
real_alg hausdorff_distance_exact(const interval_union& a, const interval_union& b);
high_real hausdorff_distance(const interval_union& a, const interval_union& b, int prec = 128);

/// Interval-removal construction: at stage j every piece longer than
/// beta^-j loses the open interval (lo + beta^-j, lo + 2 beta^-j), clipped to
/// the piece. Ties (piece length exactly beta^-j) skip the removal.
struct removal_result {
    interval_union set;
    int tie_skips = 0;
};
removal_result build_b(const real_alg& beta, int n);

/// Outer approximation of the digit-restricted set over {0,2}: the level-k
/// canonical cover merged into an interval union.
interval_union build_c_approx(const one_expansion& one, int k, int cont_depth = 24);

/// Distance between a set and its image under x/beta and (x+2)/beta (the
/// latter restricted to [0, beta-2]); near-invariant sets give small values.
high_real invariance_check(const interval_union& a, const real_alg& beta, int prec = 128);

/// Membership in the exceptional parameter set: the expansion of 1 is finite
/// with every digit in {0,2}.
struct q_status {
    enum class verdict { in_q, not_in_q, undecided_at_depth } v;
    digit_word eps;  // greedy digits up to the finite end (in_q only)
    int pos = 0;     // offending position (not_in_q) or inspected depth
    int digit = -1;
};
q_status member_q(const one_expansion& one);

/// Points of the removal set that are missing from the restricted set:
/// admissible {0,2}-words of length < k closed with a final digit 1, plus
/// the point 1 itself.
std::vector<real_alg> difference_points(const one_expansion& one, int k);

/// Iterates the everywhere-defined pair (x/beta, clamped (x+2)/beta) from
/// the unit interval for n rounds.
interval_union extended_ifs_attractor(const real_alg& beta, int n);

} // namespace betadim

#endif
