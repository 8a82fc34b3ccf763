#include "lrc/job.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "lrc/control.hpp"
#include "lrc/error.hpp"
#include "lrc/response.hpp"
#include "lrc/transfer.hpp"
#include "lrc/verify.hpp"

namespace lrc {

namespace {

constexpr double kKernelFlagTol = 1e-7;

FourierSeries series_from_spec(const Json& j) {
  if (j.is_string()) return series_preset(j.get<std::string>());
  if (j.is_object() && j.contains("terms")) {
    const Json& terms = j.at("terms");
    if (!terms.is_array())
      throw InvalidArgument("'terms' must be an array");
    FourierSeries f(0);
    for (const Json& t : terms) {
      if (!t.is_object() || !t.contains("kind") || !t.contains("k"))
        throw InvalidArgument("term needs 'kind' and 'k'");
      const std::string kind = t.at("kind").get<std::string>();
      if (!t.at("k").is_number_integer())
        throw InvalidArgument("term 'k' must be an integer");
      const int k = t.at("k").get<int>();
      const double amp = t.contains("amp") ? t.at("amp").get<double>() : 1.0;
      if (!std::isfinite(amp)) throw InvalidArgument("term 'amp' not finite");
      if (kind == "sin") {
        f += FourierSeries::sine(k, amp);
      } else if (kind == "cos") {
        f += FourierSeries::cosine(k, amp);
      } else {
        throw InvalidArgument("term kind must be 'sin' or 'cos'");
      }
    }
    return f;
  }
  return series_from_json(j);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const Json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::string csv_of(std::size_t grid,
                   const std::vector<std::pair<std::string, FourierSeries>>& cols) {
  std::ostringstream out;
  out << std::setprecision(17) << "x";
  for (const auto& [name, f] : cols) out << ',' << name;
  out << '\n';
  std::vector<GridFunction> samples;
  for (const auto& [name, f] : cols)
    samples.push_back(sample([&f](double x) { return f.evaluate(x); }, grid));
  for (std::size_t i = 0; i < grid; ++i) {
    out << static_cast<double>(i) / static_cast<double>(grid);
    for (const auto& s : samples) out << ',' << s.samples[i];
    out << '\n';
  }
  return out.str();
}

Json header(const char* command, const JobConfig& config) {
  Json out;
  out["command"] = command;
  out["config_hash"] = config_hash(config);
  out["N"] = config.order;
  return out;
}

// Runs a command body, translating library errors to exit codes.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << " (residual " << e.residual() << ")\n";
    return kExitInfeasible;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
}

}  // namespace

FourierSeries series_preset(const std::string& name) {
  if (name == "zero") return FourierSeries(1);
  if (name == "sin") return FourierSeries::sine(1);
  if (name == "sin2") return FourierSeries::sine(2);
  if (name == "cos") return FourierSeries::cosine(1);
  if (name == "cos2") return FourierSeries::cosine(2);
  if (name == "mixed")
    return FourierSeries::cosine(1) + FourierSeries::cosine(3, 0.5);
  throw InvalidArgument("unknown series preset '" + name + "'");
}

JobConfig parse_job(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  JobConfig c;
  if (j.contains("map")) {
    const Json& m = j.at("map");
    if (m.is_string()) {
      if (m.get<std::string>() != "doubling")
        throw InvalidArgument("unknown map preset '" + m.get<std::string>() + "'");
      c.map = CircleMap::linear(2);
    } else {
      if (!m.is_object() || !m.contains("degree") ||
          !m.at("degree").is_number_integer())
        throw InvalidArgument("map needs an integer 'degree'");
      const FourierSeries p = m.contains("periodic_part")
                                  ? series_from_spec(m.at("periodic_part"))
                                  : FourierSeries(0);
      c.map = CircleMap(m.at("degree").get<int>(), p);
    }
  }
  c.target = j.contains("target") ? series_from_spec(j.at("target"))
                                  : FourierSeries(1);
  if (j.contains("epsilon")) c.epsilon = series_from_spec(j.at("epsilon"));
  if (j.contains("weights")) c.weights = weights_from_json(j.at("weights"));
  if (j.contains("N")) {
    if (!j.at("N").is_number_integer() || j.at("N").get<long>() < 1 ||
        j.at("N").get<long>() > 4096)
      throw InvalidArgument("'N' must be an integer in 1..4096");
    c.order = j.at("N").get<int>();
  }
  if (j.contains("grid")) {
    if (!j.at("grid").is_number_integer() || j.at("grid").get<long>() < 1)
      throw InvalidArgument("'grid' must be a positive integer");
    c.grid = j.at("grid").get<std::size_t>();
  }
  if (j.contains("verify")) {
    const Json& v = j.at("verify");
    if (!v.is_object()) throw InvalidArgument("'verify' must be an object");
    VerifySettings s;
    if (v.contains("delta")) s.delta = v.at("delta").get<double>();
    if (v.contains("bins")) {
      if (!v.at("bins").is_number_integer() || v.at("bins").get<long>() < 2)
        throw InvalidArgument("verify.bins must be an integer >= 2");
      s.bins = v.at("bins").get<std::size_t>();
    }
    if (!std::isfinite(s.delta) || !(s.delta > 0.0))
      throw InvalidArgument("verify.delta must be positive and finite");
    c.verify = s;
  }
  return c;
}

Json to_json(const JobConfig& c) {
  Json out;
  out["map"] = to_json(c.map);
  out["target"] = to_json(c.target);
  if (c.epsilon) out["epsilon"] = to_json(*c.epsilon);
  out["weights"] = to_json(c.weights);
  out["N"] = c.order;
  out["grid"] = c.grid;
  if (c.verify) {
    Json v;
    v["delta"] = c.verify->delta;
    v["bins"] = c.verify->bins;
    out["verify"] = std::move(v);
  }
  return out;
}

std::string config_hash(const JobConfig& config) {
  const std::string text = to_json(config).dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

int cmd_density(const JobConfig& config, const std::filesystem::path& out_dir,
                std::ostream& err) {
  return guarded(err, [&] {
    const DensityReport rep = solve_invariant_density(config.map, config.order);
    Json out = header("density", config);
    out["density"] = to_json(rep.density);
    out["residual"] = rep.galerkin_residual;
    out["pointwise_residual"] = rep.pointwise_residual;
    out["iterations"] = rep.iterations;
    out["min_density"] = rep.min_value;
    write_json(out_dir / "density.json", out);
    write_text(out_dir / "density.csv",
               csv_of(config.grid, {{"density", rep.density}}));
    return static_cast<int>(kExitOk);
  });
}

int cmd_respond(const JobConfig& config, const std::filesystem::path& out_dir,
                std::ostream& err) {
  if (!config.epsilon) {
    err << "config error: respond needs an 'epsilon' field\n";
    return kExitConfig;
  }
  return guarded(err, [&] {
    const ResponseProblem problem =
        ResponseProblem::create(config.map, config.order);
    const FourierSeries& eps = *config.epsilon;
    const FourierSeries three =
        derivative_operator_three_term(problem, eps, problem.density());
    const FourierSeries compact =
        derivative_operator(problem, eps, problem.density());
    const FourierSeries response = forward_response(problem, eps);
    double solve_residual = 0.0;
    FourierSeries rhs = compact;
    rhs.set(0, 0.0);
    problem.solver().solve(rhs, &solve_residual);

    const double size = sup_norm(response);
    Json out = header("respond", config);
    out["epsilon"] = to_json(eps);
    out["response"] = to_json(response);
    out["residual"] = solve_residual;
    out["form_agreement"] = sup_norm(three - compact);
    out["condition"] = problem.solver().condition();
    out["kernel_direction"] = size < kKernelFlagTol && sup_norm(eps) > 0.0;
    write_json(out_dir / "respond.json", out);
    write_text(out_dir / "respond.csv",
               csv_of(config.grid, {{"response", response}}));
    return static_cast<int>(kExitOk);
  });
}

int cmd_control(const JobConfig& config, const std::filesystem::path& out_dir,
                std::ostream& err) {
  return guarded(err, [&] {
    SobolevWeights weights = config.weights;
    weights.validate(true);
    const ResponseProblem problem =
        ResponseProblem::create(config.map, config.order);
    const ControlSolution minimal =
        minimal_norm_control(problem, config.target, weights);
    const ControlSolution two = solve_control(problem, config.target, weights);
    const NormConvergence conv = minimal_norm_convergence(
        config.map, config.target, weights, config.order);

    Json out = header("control", config);
    out["weights"] = to_json(weights);
    Json sols = Json::array();
    for (const ControlSolution* s : {&two, &minimal}) {
      Json js = to_json(*s);
      js["l2_norm"] = sobolev_norm(s->epsilon, {});
      js["round_trip"] =
          sup_norm(forward_response(problem, s->epsilon) - config.target);
      sols.push_back(std::move(js));
    }
    out["solutions"] = std::move(sols);
    Json jc;
    jc["norm_N"] = conv.norm_n;
    jc["norm_2N"] = conv.norm_2n;
    jc["difference"] = conv.difference;
    out["norm_convergence"] = std::move(jc);
    write_json(out_dir / "control.json", out);
    write_text(out_dir / "control.csv",
               csv_of(config.grid, {{"two_step", two.epsilon},
                                    {"minimal_norm", minimal.epsilon}}));
    return static_cast<int>(kExitOk);
  });
}

int cmd_verify(const JobConfig& config, const std::filesystem::path& out_dir,
               std::ostream& err) {
  if (!config.verify) {
    err << "config error: verify needs a 'verify' block\n";
    return kExitConfig;
  }
  return guarded(err, [&] {
    std::vector<std::pair<std::string, FourierSeries>> candidates;
    if (config.epsilon) {
      candidates.emplace_back("epsilon", *config.epsilon);
    } else {
      SobolevWeights weights = config.weights;
      weights.validate(true);
      const ResponseProblem problem =
          ResponseProblem::create(config.map, config.order);
      const ControlSolution minimal =
          minimal_norm_control(problem, config.target, weights);
      candidates.emplace_back(
          "two_step", solve_control(problem, config.target, weights).epsilon);
      candidates.emplace_back("minimal_norm", minimal.epsilon);
    }

    Json out = header("verify", config);
    out["delta"] = config.verify->delta;
    out["bins"] = config.verify->bins;
    out["budget"] = kVerifyBudget;
    Json checks = Json::array();
    bool pass = true;
    std::optional<BinnedFunction> first;
    for (const auto& [label, eps] : candidates) {
      const BinnedFunction fd = fd_response(PerturbedFamily(config.map, eps),
                                            config.verify->delta,
                                            config.verify->bins);
      const double disc = compare_l1(fd, config.target);
      const bool ok = disc < kVerifyBudget;
      pass = pass && ok;
      Json c;
      c["solution"] = label;
      c["discrepancy"] = disc;
      c["pass"] = ok;
      checks.push_back(std::move(c));
      if (!first) first = fd;
    }
    out["checks"] = std::move(checks);
    out["pass"] = pass;
    write_json(out_dir / "verify.json", out);
    std::ostringstream csv;
    write_csv(csv, *first);
    write_text(out_dir / "verify.csv", csv.str());
    err << (pass ? "PASS" : "FAIL") << "\n";
    return static_cast<int>(pass ? kExitOk : kExitBudget);
  });
}

int run_command(const std::string& command,
                const std::filesystem::path& config_path,
                const std::filesystem::path& out_dir,
                std::optional<int> modes, std::optional<std::size_t> grid,
                std::ostream& err) {
  JobConfig config;
  try {
    std::ifstream in(config_path);
    if (!in) throw InvalidArgument("cannot open " + config_path.string());
    config = parse_job(Json::parse(in));
    if (modes) {
      if (*modes < 1) throw InvalidArgument("--modes must be >= 1");
      config.order = *modes;
    }
    if (grid) {
      if (*grid < 1) throw InvalidArgument("--grid must be >= 1");
      config.grid = *grid;
    }
    std::filesystem::create_directories(out_dir);
  } catch (const Json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  if (command == "density") return cmd_density(config, out_dir, err);
  if (command == "respond") return cmd_respond(config, out_dir, err);
  if (command == "control") return cmd_control(config, out_dir, err);
  if (command == "verify") return cmd_verify(config, out_dir, err);
  err << "config error: unknown command '" << command << "'\n";
  return kExitConfig;
}

}  // namespace lrc
