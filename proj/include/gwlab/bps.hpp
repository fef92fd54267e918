#ifndef GWLAB_BPS_HPP
#define GWLAB_BPS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gwlab/rational.hpp"
#include "gwlab/series.hpp"
#include "gwlab/target.hpp"

namespace gwlab {

/// (genus, curve class over the generators, sorted insertion multiset of
/// basis indices). Ordered by class total degree, then class, insertions
/// and genus, which is also the extraction order.
struct TableKey {
  int genus = 0;
  std::vector<int> curve_class;
  std::vector<int> insertions;

  int class_degree() const;
  bool operator==(const TableKey&) const = default;
};

struct TableKeyLess {
  bool operator()(const TableKey& a, const TableKey& b) const;
};

/// A table of Gromov-Witten or BPS invariants. Entries absent from the
/// map are zero; `complete_through_genus` records how far the table is
/// known (defaults to the largest genus present).
struct InvariantTable {
  std::map<TableKey, Rational, TableKeyLess> entries;
  std::optional<int> complete_through_genus;

  int coverage() const;
  bool operator==(const InvariantTable& other) const { return entries == other.entries; }
};

using GWTable = InvariantTable;
using BPSTable = InvariantTable;

/// True iff beta != 0 has non-negative entries, every insertion has real
/// degree > 2 and sum(deg/2) = n + int_beta c_1.
bool dimension_filter(const ThreefoldData& data, const std::vector<int>& curve_class,
                      const std::vector<int>& insertions);

/// Constant-map part of the potential in the primary variables t^a_0:
/// the cubic intersection form at lambda^{-2}, the c_2 term at lambda^0 and
/// the lambda_{g-1}^3 Hodge terms for 2 <= g <= max_genus.
DescendentSeries constant_potential(const ThreefoldData& data, const Truncation& trunc);

/// Non-constant potential sum lambda^{2g-2} q^beta t^I <I>_{g,beta} / |Aut I|.
DescendentSeries nonconstant_potential(const GWTable& gw, const ThreefoldData& data,
                                       const Truncation& trunc);

/// Composes Gromov-Witten invariants through genus trunc.max_genus from BPS
/// invariants (multiple covers for c_1-degree-0 classes up to
/// trunc.max_class_degree, a single sine factor otherwise).
GWTable gw_from_bps(const BPSTable& bps, const ThreefoldData& data, const Truncation& trunc);

/// Exact inverse of gw_from_bps through genus trunc.max_genus.
BPSTable bps_from_gw(const GWTable& gw, const ThreefoldData& data, const Truncation& trunc);

struct IntegralityReport {
  std::vector<std::pair<TableKey, Rational>> failures;
  std::size_t checked = 0;
  bool passed() const { return failures.empty(); }
};

IntegralityReport audit_integrality(const BPSTable& bps);

struct GenusVanishingReport {
  std::vector<int> curve_class;
  std::optional<int> support_max;
  int examined_through = -1;
  /// "support <= g" or "support empty"; bounded evidence only.
  std::string summary() const;
};

GenusVanishingReport audit_genus_vanishing(const BPSTable& bps, const std::vector<int>& curve_class);

std::string format_key(const TableKey& key, const ThreefoldData* data = nullptr);

}  // namespace gwlab

#endif  // GWLAB_BPS_HPP
