#include "sublin/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sublin/choquet.hpp"
#include "sublin/harness.hpp"
#include "sublin/io.hpp"
#include "sublin/preorder.hpp"
#include "sublin/scale.hpp"

namespace sublin {

namespace {

constexpr int kExitInput = 2;
constexpr double kOracleStep = 1e-4;

struct Options {
  std::string family_file;
  std::string capacity_file;
  std::string point;
  std::string other_point;
  std::string x_plus;
  std::string points_file;
  std::string bound_cap = "1048576";
  std::string out_file;
  double t = 2.0;
  bool strict = false;
  RunConfig cfg;
};

RandomVariable point_for(const std::string& text, const StateSpace& space, bool cone) {
  auto x = parse_point_text(text);
  if (x.size() != space.size()) {
    throw InputError("point '" + text + "' has " + std::to_string(x.size()) + " coordinates, expected " +
                     std::to_string(space.size()));
  }
  if (cone) {
    try {
      require_cone_point(x, space.size());
    } catch (const DomainError& e) {
      throw InputError("point '" + text + "': " + e.what());
    }
  }
  return x;
}

void add_run_flags(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.cfg.seed, "RNG seed")->capture_default_str();
  sub->add_option("--samples", o.cfg.samples, "Sampled points per sweep")->capture_default_str();
  sub->add_option("--depth", o.cfg.depth, "Bisection depth")->capture_default_str();
  sub->add_option("--tol", o.cfg.tol, "Reconstruction tolerance")->capture_default_str();
  sub->add_option("--bound-cap", o.bound_cap, "Largest power of two tried when bracketing (n or n/d)")
      ->capture_default_str();
  sub->add_option("--max-value", o.cfg.max_value, "Upper bound of sampled coordinates")->capture_default_str();
  auto* strict = sub->add_flag("--strict", o.strict, "Any violation fails the run (default)");
  sub->add_flag("--expected-violation", o.cfg.expected_violation,
                "Subadditivity violations of non-concave members are the expected outcome")
      ->excludes(strict);
  sub->add_option("--out", o.out_file, "Write the JSON report here instead of stdout");
}

int emit_report(const RunOutcome& run, const Options& o, std::ostream& out) {
  const auto text = run.report.dump(2) + "\n";
  if (o.out_file.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out_file, std::ios::binary);
    if (!f) throw InputError(o.out_file + ": cannot open for writing");
    f << text;
    if (!f) throw InputError(o.out_file + ": write failed");
  }
  return run.exit_code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Choquet-integral utilities, preorders and decreasing scales"};
  app.require_subcommand(1);
  Options o;

  auto* integrate = app.add_subcommand("integrate", "Choquet integral of a point, with Riemann cross-check");
  integrate->add_option("capacity", o.capacity_file, "Capacity JSON file")->required();
  integrate->add_option("point", o.point, "Comma-separated coordinates, e.g. 1,0")->required();

  auto* compare_cmd = app.add_subcommand("compare", "Compare two points under a family's preorder");
  compare_cmd->add_option("family", o.family_file, "Family or capacity JSON file")->required();
  compare_cmd->add_option("x", o.point)->required();
  compare_cmd->add_option("y", o.other_point)->required();

  auto* classify = app.add_subcommand("classify", "Cone class (X0, X+, X-) of a point");
  classify->add_option("family", o.family_file, "Family or capacity JSON file")->required();
  classify->add_option("x", o.point)->required();
  classify->add_option("--t", o.t, "Scaling witness, > 1")->capture_default_str();

  auto* reconstruct = app.add_subcommand("reconstruct", "Utility of a point recovered from its sublevel scale");
  reconstruct->add_option("family", o.family_file, "Family or capacity JSON file")->required();
  reconstruct->add_option("x", o.point)->required();
  reconstruct->add_option("--depth", o.cfg.depth)->capture_default_str();
  reconstruct->add_option("--bound-cap", o.bound_cap)->capture_default_str();

  auto* build = app.add_subcommand("build-scale", "Infimum estimates of points on a family's scale");
  build->add_option("family", o.family_file, "Family or capacity JSON file")->required();
  build->add_option("--x-plus", o.x_plus, "Use the reference-ray scale through this point");
  build->add_option("--points", o.points_file, "Point-set JSON file (default: seeded sample)");
  add_run_flags(build, o);

  auto* verify_scale = app.add_subcommand("verify-scale", "Scale-axiom checks on a family's scale");
  verify_scale->add_option("family", o.family_file, "Family or capacity JSON file")->required();
  verify_scale->add_option("--x-plus", o.x_plus, "Use the reference-ray scale through this point");
  add_run_flags(verify_scale, o);

  auto* theorem1 = app.add_subcommand("verify-theorem1", "Utility-to-scale-to-utility checks for a family");
  theorem1->add_option("family", o.family_file, "Family or capacity JSON file")->required();
  add_run_flags(theorem1, o);

  auto* corollary = app.add_subcommand("verify-corollary", "Reference-ray checks for a single capacity");
  corollary->add_option("capacity", o.capacity_file, "Capacity JSON file")->required();
  corollary->add_option("--x-plus", o.x_plus, "Reference point, e.g. 1,1")->required();
  add_run_flags(corollary, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (!o.bound_cap.empty()) o.cfg.bound_cap = PositiveRational::parse(o.bound_cap);

    if (integrate->parsed()) {
      const auto mu = load_capacity_file(o.capacity_file);
      const auto x = point_for(o.point, mu.space(), false);
      const double v = choquet_integral(mu, x);
      const double oracle = choquet_riemann_oracle(mu, x, kOracleStep);
      out << format_real(v) << "\n";
      out << "riemann_delta " << format_real(std::abs(v - oracle)) << " (step " << format_real(kOracleStep)
          << ")\n";
      return 0;
    }

    if (compare_cmd->parsed()) {
      const auto family = load_family_file(o.family_file);
      const auto x = point_for(o.point, family.space(), true);
      const auto y = point_for(o.other_point, family.space(), true);
      out << to_string(compare(family, x, y)) << "\n";
      return 0;
    }

    if (classify->parsed()) {
      const auto family = load_family_file(o.family_file);
      const auto x = point_for(o.point, family.space(), true);
      if (!(o.t > 1.0)) throw InputError("--t must be greater than 1");
      const auto c = classify_cone_point(PreorderOracle::from_family(family), x, {o.t});
      out << to_string(c.cls);
      if (c.witness_t) out << " t=" << format_real(*c.witness_t);
      out << "\n";
      return 0;
    }

    if (reconstruct->parsed()) {
      const auto family = load_family_file(o.family_file);
      const auto x = point_for(o.point, family.space(), true);
      const auto u = Utility::from_family(family);
      try {
        const auto est = utility_from_scale(scale_from_utility(u), x, o.cfg.depth, o.cfg.bound_cap);
        out << format_real(est.value) << "\n";
        out << "width " << format_real(est.width) << " u " << format_real(u(x)) << "\n";
        return 0;
      } catch (const CoveringViolation& e) {
        err << e.what() << "\n";
        return 1;
      }
    }

    if (build->parsed() || verify_scale->parsed()) {
      validate(o.cfg);
      const auto family = load_family_file(o.family_file);
      std::optional<RandomVariable> x_plus;
      if (!o.x_plus.empty()) x_plus = point_for(o.x_plus, family.space(), true);
      if (verify_scale->parsed()) return emit_report(run_verify_scale(family, x_plus, o.cfg), o, out);
      std::vector<RandomVariable> points;
      if (o.points_file.empty()) {
        points = draw_scale_sample(family.space(), o.cfg).points;
      } else {
        auto set = load_point_set_file(o.points_file);
        if (set.space.size() != family.space().size()) {
          throw InputError(o.points_file + ": point set has " + std::to_string(set.space.size()) +
                           " states, family has " + std::to_string(family.space().size()));
        }
        points = std::move(set.points);
      }
      if (x_plus) {
        const auto cls = classify_cone_point(PreorderOracle::from_family(family), *x_plus);
        if (cls.cls != ConeClass::Xplus) {
          err << "error: reference point is not in X+ (" << to_string(cls.cls) << ")\n";
          return 1;
        }
      }
      return emit_report(run_build_scale(family, x_plus, points, o.cfg), o, out);
    }

    if (theorem1->parsed()) {
      validate(o.cfg);
      const auto family = load_family_file(o.family_file);
      return emit_report(run_theorem1(family, o.cfg), o, out);
    }

    if (corollary->parsed()) {
      validate(o.cfg);
      const auto mu = load_capacity_file(o.capacity_file);
      const auto x_plus = point_for(o.x_plus, mu.space(), true);
      return emit_report(run_corollary(mu, x_plus, o.cfg), o, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const RationalOverflow& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace sublin
