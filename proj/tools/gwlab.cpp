// gwlab: command-line front end. Every command writes a deterministic
// text report to stdout (and to --golden PATH); data artifacts go to --out.
#include <CLI11.hpp>

#include <iostream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "gwlab/bps.hpp"
#include "gwlab/errors.hpp"
#include "gwlab/exact_core.hpp"
#include "gwlab/gorenstein.hpp"
#include "gwlab/io.hpp"
#include "gwlab/point_solver.hpp"
#include "gwlab/virasoro.hpp"

using namespace gwlab;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;
constexpr int kTruncation = 3;

struct Outcome {
  int status = kOk;
  std::string report;
};

struct Common {
  std::string golden;
  std::string out;
  bool quiet = false;
};

ThreefoldData require_threefold(const TargetFile& t, const std::string& path) {
  if (!t.threefold) throw InputError(path + ": target has no 'threefold' section");
  return *t.threefold;
}

int max_class_degree_of(const InvariantTable& table) {
  int d = 0;
  for (const auto& [key, v] : table.entries) d = std::max(d, key.class_degree());
  return d;
}

std::string table_report(const std::string& title, const InvariantTable& table, const ThreefoldData& data) {
  std::ostringstream os;
  os << title << ": " << table.entries.size() << " nonzero entries, complete through genus "
     << table.coverage() << "\n";
  for (const auto& [key, v] : table.entries) os << format_key(key, &data) << " = " << to_string(v) << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic Gromov-Witten laboratory"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--golden", common.golden, "Write the canonical report to this path");
    sub->add_option("--out", common.out, "Write the data artifact (JSON) to this path");
    sub->add_flag("-q,--quiet", common.quiet, "Do not print the report");
  };

  std::function<Outcome()> run;

  // bernoulli
  int bern_max = 20;
  auto* bern = app.add_subcommand("bernoulli", "Bernoulli numbers B_0..B_n");
  bern->add_option("-n,--max", bern_max, "Largest index")->check(CLI::NonNegativeNumber);
  add_common(bern);
  bern->callback([&] {
    run = [&] {
      Outcome o;
      Json arr = Json::array();
      for (int n = 0; n <= bern_max; ++n) {
        o.report += "B_" + std::to_string(n) + " = " + to_string(bernoulli(n)) + "\n";
        arr.push_back(rational_to_json(bernoulli(n)));
      }
      if (!common.out.empty()) write_text_file(common.out, canonical_dump(Json{{"bernoulli", arr}}));
      return o;
    };
  });

  // hodge
  int hodge_max = 5;
  auto* hodge = app.add_subcommand("hodge", "Hodge integrals of lambda_{g-1}^3 for 2 <= g <= max");
  hodge->add_option("-g,--max-genus", hodge_max, "Largest genus")->check(CLI::Range(2, 1000));
  add_common(hodge);
  hodge->callback([&] {
    run = [&] {
      Outcome o;
      Json obj = Json::object();
      for (int g = 2; g <= hodge_max; ++g) {
        o.report += "g=" + std::to_string(g) + " lambda_{g-1}^3 = " + to_string(hodge_lambda_cubed(g)) + "\n";
        obj[std::to_string(g)] = rational_to_json(hodge_lambda_cubed(g));
      }
      if (!common.out.empty()) write_text_file(common.out, canonical_dump(obj));
      return o;
    };
  });

  // gv-compose / gv-extract / gv-audit
  std::string target_path;
  std::string table_path;
  int gv_genus = 0;
  int gv_degree = -1;
  auto* compose = app.add_subcommand("gv-compose", "Gromov-Witten table from a BPS table");
  auto* extract = app.add_subcommand("gv-extract", "BPS table from a Gromov-Witten table");
  for (auto* sub : {compose, extract}) {
    sub->add_option("--target", target_path, "Threefold target file")->required()->check(CLI::ExistingFile);
    sub->add_option("--table", table_path, "Input invariant table")->required()->check(CLI::ExistingFile);
    sub->add_option("-g,--max-genus", gv_genus, "Largest genus")->required()->check(CLI::NonNegativeNumber);
    sub->add_option("-d,--max-degree", gv_degree, "Largest class degree (default: largest in the table)");
    add_common(sub);
  }
  auto gv_run = [&](bool composing) {
    run = [&, composing] {
      const TargetFile target = load_target(target_path);
      const ThreefoldData data = require_threefold(target, target_path);
      InvariantTable input;
      try {
        input = invariant_table_from_json(read_json_file(table_path), data);
      } catch (const InputError& e) {
        throw InputError(table_path + ": " + e.what());
      }
      Truncation trunc{gv_genus, 0, 0, gv_degree >= 0 ? gv_degree : max_class_degree_of(input)};
      const InvariantTable output = composing ? gw_from_bps(input, data, trunc) : bps_from_gw(input, data, trunc);
      if (!common.out.empty()) write_text_file(common.out, canonical_dump(invariant_table_to_json(output, data)));
      return Outcome{kOk, table_report(composing ? "gromov-witten table" : "bps table", output, data)};
    };
  };
  compose->callback([&] { gv_run(true); });
  extract->callback([&] { gv_run(false); });

  auto* audit = app.add_subcommand("gv-audit", "Integrality and genus-support audit of a BPS table");
  audit->add_option("--target", target_path, "Threefold target file")->required()->check(CLI::ExistingFile);
  audit->add_option("--table", table_path, "BPS table")->required()->check(CLI::ExistingFile);
  add_common(audit);
  audit->callback([&] {
    run = [&] {
      const TargetFile target = load_target(target_path);
      const ThreefoldData data = require_threefold(target, target_path);
      InvariantTable bps;
      try {
        bps = invariant_table_from_json(read_json_file(table_path), data);
      } catch (const InputError& e) {
        throw InputError(table_path + ": " + e.what());
      }
      const IntegralityReport integrality = audit_integrality(bps);
      std::ostringstream os;
      os << "integrality: checked " << integrality.checked << " entries, " << integrality.failures.size()
         << " non-integral " << (integrality.passed() ? "PASS" : "FAIL") << "\n";
      for (const auto& [key, v] : integrality.failures) {
        os << "non-integral " << format_key(key, &data) << " = " << to_string(v) << "\n";
      }
      std::set<std::vector<int>, std::less<>> classes;
      for (const auto& [key, v] : bps.entries) classes.insert(key.curve_class);
      for (const auto& cls : classes) {
        const GenusVanishingReport g = audit_genus_vanishing(bps, cls);
        os << "class [";
        for (std::size_t i = 0; i < cls.size(); ++i) os << (i ? "," : "") << cls[i];
        os << "]: " << g.summary() << " (examined through genus " << g.examined_through << ")\n";
      }
      return Outcome{integrality.passed() ? kOk : kCheckFailed, os.str()};
    };
  });

  // virasoro-bracket
  int kmax = 4;
  bool show_ops = false;
  auto* bracket = app.add_subcommand("virasoro-bracket", "Verify [L_k, L_l] = (k-l) L_{k+l}");
  bracket->add_option("--target", target_path, "Target file")->required()->check(CLI::ExistingFile);
  bracket->add_option("--kmax", kmax, "Largest k")->check(CLI::Range(-1, 64));
  bracket->add_flag("--show-operators", show_ops, "Print L_{-1}..L_kmax");
  add_common(bracket);
  bracket->callback([&] {
    run = [&] {
      const TargetFile target = load_target(target_path);
      const BracketReport r = check_bracket(target.geometry, kmax);
      std::string report = r.to_string();
      if (show_ops) {
        for (int k = -1; k <= kmax; ++k) {
          report += "L_" + std::to_string(k) + ":\n" + build_virasoro(k, target.geometry).to_string();
        }
      }
      return Outcome{r.passed() ? kOk : kCheckFailed, report};
    };
  });

  // virasoro-residual
  std::string series_path;
  int res_genus = 2;
  int res_tdeg = 3;
  int kmin = -1;
  int res_kmax = 3;
  auto* resid = app.add_subcommand("virasoro-residual", "Coefficients of L_k(Z) on the exact region");
  resid->add_option("--target", target_path, "Target file")->required()->check(CLI::ExistingFile);
  auto* table_opt =
      resid->add_option("--table", table_path, "Point intersection table (Z built from it)")->check(CLI::ExistingFile);
  resid->add_option("--series", series_path, "Partition function series file")
      ->check(CLI::ExistingFile)
      ->excludes(table_opt);
  resid->add_option("-g,--max-genus", res_genus, "Truncation genus (with --table)")->check(CLI::NonNegativeNumber);
  resid->add_option("-t,--max-t-degree", res_tdeg, "Truncation t-degree (with --table)")
      ->check(CLI::NonNegativeNumber);
  resid->add_option("--kmin", kmin, "Smallest k")->check(CLI::Range(-1, 64));
  resid->add_option("--kmax", res_kmax, "Largest k")->check(CLI::Range(-1, 64));
  add_common(resid);
  resid->callback([&] {
    run = [&] {
      const TargetFile target = load_target(target_path);
      DescendentSeries z;
      if (!series_path.empty()) {
        try {
          z = series_from_json(read_json_file(series_path));
        } catch (const InputError& e) {
          throw InputError(series_path + ": " + e.what());
        }
      } else if (!table_path.empty()) {
        if (target.geometry.size() != 1 || target.geometry.dim() != 0) {
          throw InputError("--table builds Z for the point target only; use --series for " + target_path);
        }
        IntersectionTable table;
        try {
          table = intersection_table_from_json(read_json_file(table_path));
        } catch (const InputError& e) {
          throw InputError(table_path + ": " + e.what());
        }
        z = point_partition(table, Truncation{res_genus, res_tdeg, 3 * res_genus - 3 + res_tdeg, 0});
      } else {
        throw InputError("virasoro-residual needs --table or --series");
      }
      if (kmin > res_kmax) throw InputError("--kmin exceeds --kmax");
      const ResidualReport r = residual(target.geometry, z, kmin, res_kmax);
      if (!common.out.empty()) write_text_file(common.out, canonical_dump(series_to_json(z)));
      return Outcome{r.passed() ? kOk : kCheckFailed, r.to_string()};
    };
  });

  // point-solve
  int solve_genus = 2;
  int solve_n = 6;
  bool solve_audit = false;
  auto* solve = app.add_subcommand("point-solve", "psi-class intersection numbers from the Virasoro constraints");
  solve->add_option("-g,--max-genus", solve_genus, "Largest genus")->check(CLI::NonNegativeNumber);
  solve->add_option("-n,--max-n", solve_n, "Largest number of markings")->check(CLI::PositiveNumber);
  solve->add_flag("--audit", solve_audit, "Re-check every constraint, string and dilaton equation");
  add_common(solve);
  solve->callback([&] {
    run = [&] {
      const IntersectionTable table = solve_point(solve_genus, solve_n);
      Outcome o;
      std::ostringstream os;
      os << "intersection numbers: g <= " << solve_genus << ", n <= " << solve_n << ", " << table.entries.size()
         << " entries\n";
      if (solve_audit) {
        const EquationReport eq = check_all_equations(table);
        const EquationReport sd = check_string_dilaton(table);
        os << "constraint equations: checked " << eq.checked << ", outside bounds " << eq.skipped_out_of_bounds
           << ", failures " << eq.failures.size() << "\n";
        os << "string/dilaton: checked " << sd.checked << ", failures " << sd.failures.size() << "\n";
        for (const auto& f : eq.failures) os << f << "\n";
        for (const auto& f : sd.failures) os << f << "\n";
        if (!eq.passed() || !sd.passed()) o.status = kCheckFailed;
      }
      os << table.render();
      o.report = os.str();
      if (!common.out.empty()) write_text_file(common.out, canonical_dump(intersection_table_to_json(table)));
      return o;
    };
  });

  // gorenstein-check
  std::string algebra_path;
  std::optional<int> socle;
  auto* gor = app.add_subcommand("gorenstein-check", "Gorenstein test for a finite graded algebra");
  gor->add_option("--algebra", algebra_path, "Algebra file")->required()->check(CLI::ExistingFile);
  gor->add_option("--socle", socle, "Socle degree (default: top nonzero degree)");
  add_common(gor);
  gor->callback([&] {
    run = [&] {
      GradedAlgebra alg;
      try {
        alg = algebra_from_json(read_json_file(algebra_path));
      } catch (const InputError& e) {
        throw InputError(algebra_path + ": " + e.what());
      }
      const AlgebraReport valid = validate_algebra(alg);
      if (!valid.passed()) {
        std::string report = "algebra invalid:\n";
        for (const auto& f : valid.failures) report += f + "\n";
        return Outcome{kBadInput, report};
      }
      const GorensteinVerdict v = gorenstein_check(alg, socle);
      return Outcome{v.gorenstein ? kOk : kCheckFailed, v.to_string()};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  Outcome outcome;
  try {
    outcome = run();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const TruncationError& e) {
    std::cerr << "truncation: " << e.what() << "\n";
    return kTruncation;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency: " << e.what() << "\n";
    return kCheckFailed;
  }
  if (!common.quiet) std::cout << outcome.report;
  if (!common.golden.empty()) write_text_file(common.golden, outcome.report);
  return outcome.status;
}
