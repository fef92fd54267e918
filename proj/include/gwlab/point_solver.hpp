#ifndef GWLAB_POINT_SOLVER_HPP
#define GWLAB_POINT_SOLVER_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gwlab/rational.hpp"
#include "gwlab/series.hpp"
#include "gwlab/virasoro.hpp"

namespace gwlab {

/// <tau_{k_1} ... tau_{k_n}>_g with ks sorted ascending. Ordered by
/// (genus, n, lexicographic ks), the solving order.
struct PointKey {
  int genus = 0;
  std::vector<int> ks;

  int points() const { return static_cast<int>(ks.size()); }
  bool operator==(const PointKey&) const = default;
};

struct PointKeyLess {
  bool operator()(const PointKey& a, const PointKey& b) const;
};

/// True iff 2g - 2 + n > 0 (the moduli space exists and the key can be
/// nonzero) and sum k_i = 3g - 3 + n.
bool point_key_admissible(const PointKey& key);

/// psi-class intersection numbers on the moduli of curves with bounds
/// genus <= max_genus and n <= max_points.
struct IntersectionTable {
  int max_genus = -1;
  int max_points = 0;
  std::map<PointKey, Rational, PointKeyLess> entries;

  bool covers(const PointKey& key) const {
    return key.genus <= max_genus && key.points() <= max_points;
  }
  /// Value at an admissible in-bounds key (absent entries read as zero);
  /// zero for inadmissible keys; TruncationError outside the bounds.
  Rational value(const PointKey& key) const;
  Rational value(int genus, std::vector<int> ks) const;
  /// One line per entry, sorted by (g, n, multiset).
  std::string render() const;
};

/// Solves L_k(Z) = 0, k >= -1, for the point target. Each key is fixed by
/// the coefficient equation whose dilaton-shift term contains it, with
/// every other correlator already known; the solver verifies this at
/// runtime and throws ConsistencyError otherwise.
IntersectionTable solve_point(int max_genus, int max_points);

/// (n-3)! / prod k_i! for a genus-0 key with sum k_i = n - 3; 0 otherwise.
Rational genus0_closed(const std::vector<int>& ks);

/// One correlator lookup during equation evaluation.
struct CorrelatorValue {
  Rational value;
  bool unknown = false;
};
using CorrelatorLookup = std::function<CorrelatorValue(const PointKey&)>;

/// constant + coefficient * unknown
struct LinearForm {
  Rational constant;
  Rational coefficient;
};

/// aut(S) times the coefficient of lambda^{2g-2} t^S in exp(-F) L exp(F)
/// for a point-target operator L, where F has correlators given by
/// `lookup`. At most one correlator may be flagged unknown, and only in a
/// linear position.
LinearForm evaluate_constraint(const DiffOperator& op, int genus, const std::vector<int>& s,
                               const CorrelatorLookup& lookup);

struct EquationReport {
  std::size_t checked = 0;
  std::size_t skipped_out_of_bounds = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Evaluates every dimension-compatible L_k coefficient equation whose
/// correlators all lie inside the table (each key with each distinct
/// element playing the dilaton-shift role).
EquationReport check_all_equations(const IntersectionTable& table);

/// String and dilaton equations on every key whose reductions stay stable.
EquationReport check_string_dilaton(const IntersectionTable& table);

/// Z = exp(F) for F = sum lambda^{2g-2} t^M <M>_g / |Aut M|. Requires the
/// table to cover trunc.max_genus and trunc.max_t_degree and
/// trunc.max_descendent_index >= 3*max_genus - 3 + max_t_degree.
DescendentSeries point_partition(const IntersectionTable& table, const Truncation& trunc);

/// F alone (same requirements as point_partition).
DescendentSeries point_free_energy(const IntersectionTable& table, const Truncation& trunc);

}  // namespace gwlab

#endif  // GWLAB_POINT_SOLVER_HPP
