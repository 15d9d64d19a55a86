#include "nejac/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace nejac;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kViolated = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_source(const std::string& path, const std::string& inline_text) {
  if (!inline_text.empty()) return inline_text;
  if (path.empty()) throw InputError("no system given: pass a file, '-' for stdin, or --equations");
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Accepts "G=<poly>" as well as a bare polynomial.
std::string strip_key(const std::string& arg, const std::string& key) {
  return arg.rfind(key + "=", 0) == 0 ? arg.substr(key.size() + 1) : arg;
}

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noether exponent, residue and division tools for polynomial maps"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::string format = "json";
  std::string equations;
  bool timestamp = false;
  app.add_option("--seed", seed, "seed for every randomized step")->capture_default_str();
  app.add_option("--tol", tol, "numeric tolerance")->capture_default_str();
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("-e,--equations", equations, "system given inline, polynomials separated by ';'");
  app.add_flag("--timestamp", timestamp, "add a UTC timestamp field to the report");

  std::vector<std::string> args;
  std::string path, expr, csv;
  int extra = 2;
  int nu_opt = -1;
  auto sub = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("args", args, "system file ('-' for stdin), then G=<poly> or P=<poly> where needed");
    return s;
  };
  auto* solve = sub("solve", "affine zeros with multiplicities");
  auto* mu = sub("mu", "number of affine zeros with multiplicity");
  auto* infinity = sub("infinity", "zeros at infinity and local intersection numbers");
  auto* noether = sub("noether", "Noether exponent, bounds and per-point data");
  auto* residues = sub("residues", "global residue of G");
  auto* jacobi = sub("jacobi", "Euler-Jacobi vanishing below the threshold");
  jacobi->add_option("--extra", extra, "witness degrees above the threshold")->capture_default_str();
  auto* divide = sub("divide", "division with the degree bound");
  divide->add_option("--nu", nu_opt, "exponent to use (default: the exact one)");
  auto* growth = sub("growth", "growth scan of |F| (consistency evidence)");
  growth->add_option("--csv", csv, "also write radius,min_abs_F rows here");
  auto* all = sub("report-all", "every module with the cross-module invariants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  // Keyed arguments may come before or after the system file.
  for (const auto& a : args) {
    bool keyed = a.rfind("G=", 0) == 0 || a.rfind("P=", 0) == 0;
    if (keyed || ((!path.empty() || !equations.empty()) && expr.empty()))
      expr = a;
    else if (path.empty())
      path = a;
    else {
      std::cerr << "input error: unexpected argument " << a << "\n";
      return kInputError;
    }
  }
  if (!expr.empty() && !residues->parsed() && !divide->parsed()) {
    std::cerr << "input error: unexpected argument " << expr << "\n";
    return kInputError;
  }
  if ((residues->parsed() || divide->parsed()) && expr.empty()) {
    std::cerr << "input error: " << (residues->parsed() ? "G=<poly>" : "P=<poly>") << " is required\n";
    return kInputError;
  }

  int status = kOk;
  json result;
  SystemFile sys;
  std::string command;
  ReportContext ctx;
  ctx.seed = seed;
  ctx.tol = tol;
  ctx.jacobi_extra = extra;
  try {
    sys = read_system(read_source(path, equations));
    PolyMap f = to_polymap(sys);
    if (sys.variables.empty()) sys.variables = default_names(f.nvars());
    ctx.names = sys.variables;
    SolveOptions so{tol, seed};
    ResidueOptions ro;
    ro.seed = seed;
    ro.tol = tol;

    if (solve->parsed()) {
      command = "solve";
      result = to_json(solve_zeros_retry(build_quotient(f), f.components(), so));
    } else if (mu->parsed()) {
      command = "mu";
      result = {{"mu", build_quotient(f).mu()}};
    } else if (infinity->parsed()) {
      command = "infinity";
      result = infinity_json(f, zeros_at_infinity(f, so), build_quotient(f).mu());
      if (!result["bezout_deficit_holds"].get<bool>()) status = kViolated;
    } else if (noether->parsed()) {
      command = "noether";
      auto r = noether_exponent(f, so);
      result = to_json(r);
      bool sandwich = (!r.bounds.lower_21 || *r.bounds.lower_21 <= r.nu) && r.nu <= r.bounds.upper_13;
      if (!r.bezout_deficit_holds || !sandwich) status = kViolated;
    } else if (residues->parsed()) {
      command = "residues";
      Poly g = parse_poly(strip_key(expr, "G"), sys.variables);
      ResidueEngine engine(f, ro);
      auto r = engine.report(g);
      result = to_json(r, ctx);
      if (!r.agree) status = kViolated;
    } else if (jacobi->parsed()) {
      command = "jacobi";
      if (extra < 0) throw InputError("--extra must be >= 0");
      auto r = jacobi_verify(f, extra, ro);
      result = to_json(r, ctx);
      if (!r.all_zero || !r.methods_agree) status = kViolated;
    } else if (divide->parsed()) {
      command = "divide";
      Poly p = parse_poly(strip_key(expr, "P"), sys.variables);
      int nu_exact = noether_exponent(f, so).nu;
      int nu = nu_opt >= 0 ? nu_opt : nu_exact;
      try {
        auto c = divide_with_bound(p, f, nu);
        result = to_json(c, ctx);
        if (!c.verified) status = kViolated;
      } catch (const DivisionError& e) {
        // Below the exact exponent an infeasible budget is expected, not a contradiction.
        if (std::string(e.what()) == "bound violated" && nu >= nu_exact) {
          result = {{"error", e.what()}, {"nu", nu}, {"nu_exact", nu_exact}};
          status = kViolated;
        } else {
          throw InputError(std::string(e.what()) + (nu < nu_exact ? " (nu below the exact exponent " +
                                                                        std::to_string(nu_exact) + ")"
                                                                  : ""));
        }
      }
    } else if (growth->parsed()) {
      command = "growth";
      auto r = noether_exponent(f, so);
      GrowthOptions go;
      go.seed = seed;
      auto g = growth_scan(f, r.nu, static_cast<long long>(r.mu), go);
      result = to_json(g);
      result["properness"] = to_json(properness_verdict(f, r, &g));
      if (!csv.empty()) {
        std::ofstream out(csv);
        if (!out) throw InputError("cannot write " + csv);
        write_growth_csv(g, out);
      }
      if (!g.consistent || !g.consistent_deficit) status = kViolated;
    } else if (all->parsed()) {
      command = "report-all";
      auto r = report_all(f, ctx);
      result = std::move(r.body);
      if (!r.invariants_hold) status = kViolated;
    }
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const InfiniteZeroSet& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const NotZeroDimensional& e) {
    std::cerr << "input error: F does not have a finite number of zeros (" << e.what() << ")\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }

  json out = envelope(command, sys, ctx, std::move(result));
  if (timestamp) out["timestamp"] = utc_now();
  if (format == "json")
    std::cout << out.dump(2) << "\n";
  else
    std::cout << render_text(out);
  return status;
}
