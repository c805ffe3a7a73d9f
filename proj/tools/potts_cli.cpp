// Command-line front end: certification pipeline, iteration probes,
// brute-force enumeration, coefficient-table checks, and region export.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "potts/brute_force.hpp"
#include "potts/certify.hpp"
#include "potts/inequalities.hpp"
#include "potts/maps.hpp"
#include "potts/regions.hpp"

namespace {

using namespace potts;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

mpfr_prec_t default_precision() {
  if (const char* env = std::getenv("POTTS_PRECISION_BITS")) {
    long v = std::atol(env);
    if (v >= 16 && v <= 1 << 20) return static_cast<mpfr_prec_t>(v);
  }
  return 128;
}

std::vector<int> parse_d_list(const std::string& spec) {
  std::vector<int> out;
  auto range_pos = spec.find("..");
  if (range_pos != std::string::npos) {
    int lo = std::stoi(spec.substr(0, range_pos));
    int hi = std::stoi(spec.substr(range_pos + 2));
    for (int d = lo; d <= hi; ++d) out.push_back(d);
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

RatioVec<Rational> parse_start_point(const std::string& spec, const PottsParams& p) {
  if (spec == "corner") return RatioVec<Rational>(p.k - 1, 1 / p.w);
  if (spec.rfind("spike-", 0) == 0) {
    int i = std::stoi(spec.substr(6));
    if (i < 1 || i > p.k - 1) throw std::invalid_argument("spike index out of range");
    RatioVec<Rational> x(p.k - 1, Rational(1));
    x[i - 1] = p.w;
    return x;
  }
  RatioVec<Rational> x;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) x.push_back(parse_rational(item));
  if (static_cast<int>(x.size()) != p.k - 1)
    throw std::invalid_argument("start point needs k-1 entries");
  return x;
}

struct CommonArgs {
  int k = 3;
  int d = 2;
  std::string w = "1/2";
  std::string out;
  mpfr_prec_t precision = default_precision();
};

int run_certify(const CommonArgs& args) {
  PottsParams p(args.k, args.d, parse_rational(args.w));
  CertifyOptions opts;
  opts.precision = args.precision;
  Certificate cert = certify_uniqueness(p, opts);
  write_output(args.out, certificate_json(cert).dump(2) + "\n");
  return cert.certified ? kExitOk : kExitFailed;
}

int run_inequalities(const CommonArgs& args, int which) {
  Rational w = parse_rational(args.w);
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  bool all_proven = true;
  for (int id = 1; id <= 4; ++id) {
    if (which != 0 && which != id) continue;
    InequalityProof proof = verify_inequality(id, args.k, args.d, w);
    all_proven = all_proven && proof.proven();
    j.push_back({{"id", proof.id},
                 {"method", method_name(proof.method)},
                 {"status", proof.proven() ? "proven" : "unknown"},
                 {"poly_hash", proof.poly_hash}});
  }
  write_output(args.out, j.dump(2) + "\n");
  return all_proven ? kExitOk : kExitFailed;
}

int run_iterate(const CommonArgs& args, const std::string& x0, int steps, double tol) {
  PottsParams p(args.k, args.d, parse_rational(args.w));
  RatioVec<Rational> start = parse_start_point(x0, p);
  IterationTrace trace = iterate_F(start, p, steps, tol, args.precision);
  std::ostringstream os;
  os << "step";
  for (int i = 1; i < p.k; ++i) os << ",x" << i;
  os << ",max_dev\n";
  char buf[64];
  for (size_t s = 0; s < trace.orbit.size(); ++s) {
    os << s;
    double dev = 0.0;
    for (double e : trace.orbit[s]) {
      snprintf(buf, sizeof buf, ",%.12g", e);
      os << buf;
      dev = std::max(dev, std::fabs(e - 1.0));
    }
    snprintf(buf, sizeof buf, ",%.12g", dev);
    os << buf << "\n";
  }
  const char* verdict = trace.verdict == IterationVerdict::Converged   ? "converged"
                        : trace.verdict == IterationVerdict::Cycling   ? "cycling"
                                                                       : "undecided";
  snprintf(buf, sizeof buf, "%.12g", trace.final_deviation);
  os << "verdict," << verdict << "," << buf << "\n";
  write_output(args.out, os.str());
  return kExitOk;
}

int run_bruteforce(const CommonArgs& args, int n, bool hat, long sample, uint64_t seed) {
  PottsParams p(args.k, args.d, parse_rational(args.w));
  FiniteTree tree = FiniteTree::make(p.d, n, hat);
  std::ostringstream os;
  os << boundary_sweep_csv(tree, p, sample > 0, sample, seed);
  DeviationResult dev = worst_case_deviation(n, p, sample > 0, sample, seed);
  os << "summary,worst_case_deviation," << to_string(dev.max_deviation) << ",witness,"
     << dev.argmax.to_index(p.k) << "\n";
  write_output(args.out, os.str());
  return kExitOk;
}

int run_tables(const CommonArgs& args, const std::string& d_spec, bool tamper) {
  std::vector<int> d_values = parse_d_list(d_spec);
  TableReport report = regenerate_tables(args.k, d_values);
  if (tamper && report.ok()) {
    // Negative control: pretend one table entry was off by one.
    Rational actual = build_critical_polys(args.k, d_values.front()).P0.coeff(0);
    report.mismatches.push_back({d_values.front(), "b^0", actual + 1, actual});
  }
  std::ostringstream os;
  os << "entries_checked," << report.entries_checked << "\n";
  for (const TableMismatch& m : report.mismatches)
    os << "mismatch,d=" << m.d << "," << m.row << ",expected," << to_string(m.expected)
       << ",actual," << to_string(m.actual) << "\n";
  os << "result," << (report.mismatches.empty() ? "match" : "mismatch") << "\n";
  write_output(args.out, os.str());
  return report.mismatches.empty() ? kExitOk : kExitFailed;
}

int run_region(const CommonArgs& args, const std::string& a_str, const std::string& b_str,
               const std::string& format) {
  RegionParams region =
      RegionParams::from_rational(args.k, parse_rational(a_str), parse_rational(b_str),
                                  args.precision);
  if (format == "svg") {
    if (args.k != 3) {
      std::cerr << "SVG export is k=3 only; use --format csv\n";
      return kExitUsage;
    }
    write_output(args.out, region_svg(region));
  } else {
    write_output(args.out, region_csv(region));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified uniqueness pipeline for the k-state anti-ferromagnetic Potts model on regular trees"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string x0 = "corner";
  int steps = 200;
  double tol = 1e-6;
  int n = 1;
  bool hat = false;
  long sample = 0;
  uint64_t seed = 1;
  std::string d_spec = "4..12";
  bool tamper = false;
  std::string a_str = "2", b_str = "2", format = "csv";
  int which = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_w = true) {
    cmd->add_option("--k", args.k, "number of states (2..4)");
    cmd->add_option("--d", args.d, "branching factor (degree - 1)");
    if (needs_w) cmd->add_option("--w", args.w, "edge weight as num/den");
    cmd->add_option("--out", args.out, "output file (default stdout)");
    cmd->add_option("--precision", args.precision, "working precision in bits");
  };

  CLI::App* certify = app.add_subcommand("certify", "run the full uniqueness certification");
  add_common(certify);

  CLI::App* ineq = app.add_subcommand("inequalities", "prove the four auxiliary inequalities");
  add_common(ineq);
  ineq->add_option("--which", which, "single inequality id (default: all)");

  CLI::App* iterate = app.add_subcommand("iterate", "empirical convergence probe of the tree recursion");
  add_common(iterate);
  iterate->add_option("--x0", x0, "start: corner, spike-i, or comma-separated rationals");
  iterate->add_option("--steps", steps, "maximum iterations");
  iterate->add_option("--tol", tol, "convergence tolerance");

  CLI::App* brute = app.add_subcommand("bruteforce", "exact enumeration over boundary conditions");
  add_common(brute);
  brute->add_option("--n", n, "tree depth");
  brute->add_flag("--hat", hat, "use the hat tree (extra root edge)");
  brute->add_option("--sample", sample, "sample this many boundary conditions instead of enumerating");
  brute->add_option("--seed", seed, "sampling seed");

  CLI::App* tables = app.add_subcommand("tables", "check the closed-form coefficient tables");
  add_common(tables, /*needs_w=*/false);
  tables->add_option("--d-list", d_spec, "d values, e.g. 4..12 or 4,6,8");
  tables->add_flag("--tamper", tamper, "negative control: inject one mismatch");

  CLI::App* region = app.add_subcommand("region", "export the region geometry");
  add_common(region, /*needs_w=*/false);
  region->add_option("--a", a_str, "region parameter a as num/den");
  region->add_option("--b", b_str, "region parameter b as num/den");
  region->add_option("--format", format, "csv or svg (svg is k=3 only)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (certify->parsed()) return run_certify(args);
    if (ineq->parsed()) return run_inequalities(args, which);
    if (iterate->parsed()) return run_iterate(args, x0, steps, tol);
    if (brute->parsed()) return run_bruteforce(args, n, hat, sample, seed);
    if (tables->parsed()) return run_tables(args, d_spec, tamper);
    if (region->parsed()) return run_region(args, a_str, b_str, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
