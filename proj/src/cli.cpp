#include "qwahba/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwahba/instance_io.hpp"
#include "qwahba/oracle.hpp"
#include "qwahba/wahba.hpp"

namespace qwahba::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kBenchAgreement = 1e-7;
constexpr std::string_view kWatermark =
    "b1, b2 were projected onto a pairwise-similar configuration before solving; "
    "this is a heuristic preprocessing step, not part of the exact solution";

struct Settings {
  double tol = kDefaultTolerance;
  bool machine = false;
};

Json to_json(const Quaternion& q) { return Json::array({q.w(), q.x(), q.y(), q.z()}); }

std::string to_text(const Quaternion& q) {
  return format_number(q.w()) + " " + format_number(q.x()) + " " + format_number(q.y()) + " " +
         format_number(q.z());
}

const char* to_text(bool b) { return b ? "true" : "false"; }

int worst(int a, int b) { return std::max(a, b); }

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::NotSimilar:
    case ErrorKind::NotPairwiseSimilar:
    case ErrorKind::NotNonreal: return kInfeasible;
    case ErrorKind::ParseError: return kUsage;
    default: return kNumerical;
  }
}

std::string status_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::NotPairwiseSimilar: return "not_pairwise_similar";
    case ErrorKind::NotNonreal: return "not_nonreal";
    default: return "numerical_failure";
  }
}

std::optional<std::vector<InstanceRecord>> load(const std::string& path, std::istream& in, std::ostream& err) {
  try {
    if (path == "-") return parse_instances(in);
    std::ifstream file(path);
    if (!file) {
      err << "error: cannot open '" << path << "'\n";
      return std::nullopt;
    }
    return parse_instances(file);
  } catch (const Error& e) {
    err << "error: " << path << ": " << e.detail() << "\n";
    return std::nullopt;
  }
}

void text_report(std::ostream& out, const SimilarityReport& r) {
  out << "verdict: " << (r.verdict ? "similar" : "not_similar") << "\n"
      << "scalar_residual: " << format_number(r.scalar_residual) << "\n"
      << "modulus_residual: " << format_number(r.modulus_residual) << "\n"
      << "inner_residual: " << format_number(r.inner_residual) << "\n"
      << "scale: " << format_number(r.scale) << "\n"
      << "tolerance: " << format_number(r.tolerance_used) << "\n";
}

Json json_report(const SimilarityReport& r) {
  return Json{{"verdict", r.verdict},
              {"scalar_residual", r.scalar_residual},
              {"modulus_residual", r.modulus_residual},
              {"inner_residual", r.inner_residual},
              {"scale", r.scale},
              {"tolerance", r.tolerance_used}};
}

void text_header(std::ostream& out, std::size_t index, const InstanceRecord& rec) {
  out << "# instance " << index;
  if (!rec.label.empty()) out << " label=" << rec.label;
  out << "\n";
}

Json json_header(std::size_t index, const InstanceRecord& rec) {
  Json j{{"index", index}};
  if (!rec.label.empty()) j["label"] = rec.label;
  return j;
}

// ---------------------------------------------------------------------------

int cmd_check(const std::vector<InstanceRecord>& records, const Settings& s, std::ostream& out) {
  int code = kSuccess;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const InstanceRecord& rec = records[i];
    Json j = json_header(i, rec);
    if (!s.machine) text_header(out, i, rec);
    try {
      const SimilarityReport r = is_pairwise_similar(rec.a1, rec.a2, rec.b1, rec.b2, s.tol);
      if (!r.verdict) code = worst(code, kInfeasible);
      if (s.machine) {
        j["status"] = "ok";
        j["report"] = json_report(r);
      } else {
        text_report(out, r);
      }
    } catch (const Error& e) {
      code = worst(code, exit_code_for(e));
      if (s.machine) {
        j["status"] = status_for(e);
        j["message"] = e.detail();
      } else {
        out << "status: " << status_for(e) << "\nmessage: " << e.detail() << "\n";
      }
    }
    if (s.machine) out << j.dump() << "\n";
  }
  return code;
}

Json json_family(const WahbaFamily& f) {
  Json q1{{"sqrt_part", to_json(f.q1_family.sqrt_part)},
          {"sqrt_magnitude", f.q1_family.sqrt_magnitude},
          {"sum_part", to_json(f.q1_family.sum_part)},
          {"antipodal", f.q1_family.antipodal}};
  if (f.q1_family.antipodal) q1["constraint_normal"] = to_json(f.q1_family.constraint_normal);
  Json j{{"q1_family", q1}, {"q1", to_json(f.q1)}, {"a3", to_json(f.a3)}, {"b3", to_json(f.b3)}};
  if (!f.collinear) {
    j["q2_sqrt_arg"] = to_json(f.q2_sqrt_arg);
    if (f.q2_antipodal) {
      j["q2_constraint_normal"] = to_json(f.q2_constraint_normal);
      j["q2_commutant_axis"] = to_json(f.q2_commutant_axis);
    }
  }
  j["q2"] = to_json(f.q2);
  return j;
}

void text_family(std::ostream& out, const WahbaFamily& f) {
  out << "q1_family.sqrt_part: " << to_text(f.q1_family.sqrt_part) << "\n"
      << "q1_family.sqrt_magnitude: " << format_number(f.q1_family.sqrt_magnitude) << "\n"
      << "q1_family.sum_part: " << to_text(f.q1_family.sum_part) << "\n";
  if (f.q1_family.antipodal) {
    out << "q1_family.constraint_normal: " << to_text(f.q1_family.constraint_normal) << "\n"
        << "q1_family.members: lambda1 * d, d pure and orthogonal to constraint_normal\n";
  } else {
    out << "q1_family.members: lambda1 * sqrt_part + mu1 * sum_part, |lambda1| + |mu1 sum_part| != 0\n";
  }
  out << "q1: " << to_text(f.q1) << "\n"
      << "a3: " << to_text(f.a3) << "\n"
      << "b3: " << to_text(f.b3) << "\n";
  if (f.collinear) {
    out << "q2_members: lambda2 != 0 (real); every q1 family member has zero cost\n";
  } else {
    out << "q2_sqrt_arg: " << to_text(f.q2_sqrt_arg) << "\n";
    if (f.q2_antipodal) {
      out << "q2_constraint_normal: " << to_text(f.q2_constraint_normal) << "\n"
          << "q2_commutant_axis: " << to_text(f.q2_commutant_axis) << "\n"
          << "q2_members: lambda2 * q2_commutant_axis, lambda2 != 0\n";
    } else {
      out << "q2_members: lambda2 * (+-sqrt(q2_sqrt_arg)), lambda2 != 0, recomputed for each q1\n";
    }
  }
  out << "q2: " << to_text(f.q2) << "\n";
}

int cmd_solve(const std::vector<InstanceRecord>& records, const Settings& s, bool family, bool precondition,
              std::ostream& out) {
  int code = kSuccess;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const InstanceRecord& rec = records[i];
    Json j = json_header(i, rec);
    if (!s.machine) text_header(out, i, rec);
    try {
      const ObservationPair input(rec.a1, rec.a2, rec.b1, rec.b2, s.tol);
      const bool project = precondition && !input.report().verdict;
      const ObservationPair pair = project ? project_to_pairwise_similar(input, s.tol) : input;
      const WahbaFamily f = solve_two_obs(pair, s.tol);
      const double cost = wahba_cost(f.canonical, pair);

      if (s.machine) {
        j["status"] = "ok";
        j["canonical"] = to_json(f.canonical);
        j["cost"] = cost;
        j["collinear"] = f.collinear;
        j["q1_antipodal"] = f.q1_family.antipodal;
        j["q2_antipodal"] = f.q2_antipodal;
        j["preconditioned"] = project;
        if (project) {
          j["input_cost"] = wahba_cost(f.canonical, input);
          j["watermark"] = kWatermark;
        }
        if (family) j["family"] = json_family(f);
      } else {
        out << "status: ok\n"
            << "canonical: " << to_text(f.canonical) << "\n"
            << "cost: " << format_number(cost) << "\n"
            << "collinear: " << to_text(f.collinear) << "\n"
            << "q1_antipodal: " << to_text(f.q1_family.antipodal) << "\n"
            << "q2_antipodal: " << to_text(f.q2_antipodal) << "\n"
            << "preconditioned: " << to_text(project) << "\n";
        if (project) {
          out << "input_cost: " << format_number(wahba_cost(f.canonical, input)) << "\n"
              << "watermark: " << kWatermark << "\n";
        }
        if (family) text_family(out, f);
      }
    } catch (const Error& e) {
      code = worst(code, exit_code_for(e));
      if (s.machine) {
        j["status"] = status_for(e);
        j["message"] = e.detail();
      } else {
        out << "status: " << status_for(e) << "\nmessage: " << e.detail() << "\n";
      }
    }
    if (s.machine) out << j.dump() << "\n";
  }
  return code;
}

int cmd_cost(const std::vector<InstanceRecord>& records, const Settings& s, const Quaternion& q, std::ostream& out) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    const InstanceRecord& rec = records[i];
    const std::array<Correspondence, 2> pairs{{{rec.a1, rec.b1}, {rec.a2, rec.b2}}};
    const double cost = wahba_cost(q, pairs);
    if (s.machine) {
      Json j = json_header(i, rec);
      j["q"] = to_json(q);
      j["cost"] = cost;
      out << j.dump() << "\n";
    } else {
      text_header(out, i, rec);
      out << "cost: " << format_number(cost) << "\n";
    }
  }
  return kSuccess;
}

void cmd_generate(std::int64_t n, std::uint64_t seed, InstanceKind kind, std::ostream& out) {
  out << "# qwahba instances v1 generator=" << SplitMix64::kName << " seed=" << seed << " kind=" << to_string(kind)
      << " n=" << n << "\n";
  for (std::int64_t i = 0; i < n; ++i) {
    const std::uint64_t instance_seed = SplitMix64::derive_seed(seed, static_cast<std::uint64_t>(i));
    const GeneratedInstance g = random_instance(instance_seed, kind);
    InstanceRecord rec{g.pair.a1(), g.pair.a2(), g.pair.b1(), g.pair.b2(),
                       std::string(to_string(kind)) + "-" + std::to_string(i), instance_seed,
                       std::string(to_string(kind))};
    out << format_record(rec) << "\n";
  }
}

double percentile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(v.size()))) - 1;
  return v[std::min(rank, v.size() - 1)];
}

int cmd_bench(std::int64_t n, std::uint64_t seed, const Settings& s, std::ostream& out) {
  using Clock = std::chrono::steady_clock;
  std::vector<double> closed_ns, eigen_ns;
  closed_ns.reserve(static_cast<std::size_t>(n));
  eigen_ns.reserve(static_cast<std::size_t>(n));
  double max_disagreement = 0.0;
  std::int64_t closed_failures = 0, eigen_failures = 0;

  for (std::int64_t i = 0; i < n; ++i) {
    const GeneratedInstance g =
        random_instance(SplitMix64::derive_seed(seed, static_cast<std::uint64_t>(i)), InstanceKind::Generic);
    const auto pairs = g.pair.correspondences();

    std::optional<Quaternion> closed, eigen;
    auto t0 = Clock::now();
    try {
      closed = solve_two_obs(g.pair, s.tol).canonical;
    } catch (const Error&) {
      ++closed_failures;
    }
    auto t1 = Clock::now();
    try {
      eigen = davenport_solve(pairs);
    } catch (const Error&) {
      ++eigen_failures;
    }
    auto t2 = Clock::now();

    closed_ns.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count());
    eigen_ns.push_back(std::chrono::duration<double, std::nano>(t2 - t1).count());
    if (closed && eigen) max_disagreement = std::max(max_disagreement, rotation_angle_between(*closed, *eigen));
  }

  const bool with_p99 = n >= 100;
  const bool agree = max_disagreement <= kBenchAgreement && closed_failures == 0 && eigen_failures == 0;
  if (s.machine) {
    const auto timing = [&](const std::vector<double>& v) {
      Json t{{"median_ns", percentile(v, 0.5)}};
      if (with_p99) t["p99_ns"] = percentile(v, 0.99);
      return t;
    };
    Json j{{"n", n},
           {"seed", seed},
           {"generator", SplitMix64::kName},
           {"closed_form", timing(closed_ns)},
           {"davenport", timing(eigen_ns)},
           {"max_disagreement_rad", max_disagreement},
           {"agreement_bound_rad", kBenchAgreement},
           {"closed_form_failures", closed_failures},
           {"davenport_failures", eigen_failures},
           {"agreement", agree}};
    out << j.dump() << "\n";
  } else {
    out << "bench n=" << n << " seed=" << seed << " generator=" << SplitMix64::kName << "\n";
    out << "method        median_ns" << (with_p99 ? "    p99_ns" : "") << "\n";
    const auto row = [&](const char* name, const std::vector<double>& v) {
      char buf[96];
      if (with_p99) {
        std::snprintf(buf, sizeof buf, "%-12s %10.1f %10.1f\n", name, percentile(v, 0.5), percentile(v, 0.99));
      } else {
        std::snprintf(buf, sizeof buf, "%-12s %10.1f\n", name, percentile(v, 0.5));
      }
      out << buf;
    };
    row("closed_form", closed_ns);
    row("davenport", eigen_ns);
    out << "max_disagreement_rad: " << format_number(max_disagreement) << "\n"
        << "failures: closed_form=" << closed_failures << " davenport=" << eigen_failures << "\n"
        << "agreement: " << (agree ? "ok" : "FAILED") << " (bound " << format_number(kBenchAgreement) << " rad)\n";
  }
  return agree ? kSuccess : kNumerical;
}

std::optional<double> tolerance_from_env(std::ostream& err, bool& bad) {
  const char* env = std::getenv("WAHBA_TOL");
  if (env == nullptr || *env == '\0') return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    err << "error: WAHBA_TOL='" << env << "' is not a positive number\n";
    bad = true;
    return std::nullopt;
  }
  return v;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form zero-cost solutions of the two-observation Wahba problem", "qwahba"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<double> tol;
  std::string format = "text";
  app.add_option("--tol", tol, "Relative tolerance (default: WAHBA_TOL or 1e-9)")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "machine"}));

  std::string input = "-";
  std::string emit = "canonical";
  bool precondition = false;
  std::string q_text;
  std::int64_t n = 1;
  std::uint64_t seed = 0;
  std::string kind_name = "generic";

  auto* check = app.add_subcommand("check", "Test pairwise similarity of each instance");
  check->add_option("input", input, "Instance file, '-' for stdin");

  auto* solve = app.add_subcommand("solve", "Solve each instance in closed form");
  solve->add_option("input", input, "Instance file, '-' for stdin");
  solve->add_option("--emit", emit, "canonical or family")->check(CLI::IsMember({"canonical", "family"}));
  solve->add_flag("--precondition", precondition,
                  "Project non-similar frame-B observations onto a similar configuration first");

  auto* cost = app.add_subcommand("cost", "Evaluate the cost of a given quaternion on each instance");
  cost->add_option("input", input, "Instance file, '-' for stdin");
  cost->add_option("--q", q_text, "Quaternion w,x,y,z (or x,y,z)")->required();

  auto* generate = app.add_subcommand("generate", "Write random pairwise-similar instances");
  generate->add_option("--n", n, "Number of instances");
  generate->add_option("--seed", seed, "Seed");
  generate->add_option("--kind", kind_name, "generic, antipodal_first, antipodal_cross or collinear")
      ->check(CLI::IsMember({"generic", "antipodal_first", "antipodal_cross", "collinear"}));

  auto* bench = app.add_subcommand("bench", "Time the closed form against the eigenvector oracle");
  bench->add_option("--n", n, "Number of instances");
  bench->add_option("--seed", seed, "Seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  Settings settings;
  settings.machine = format == "machine";
  bool bad_env = false;
  if (tol) {
    settings.tol = *tol;
  } else if (auto env = tolerance_from_env(err, bad_env)) {
    settings.tol = *env;
  }
  if (bad_env) return kUsage;

  if (generate->parsed() || bench->parsed()) {
    if (n < 1) {
      err << "error: --n must be at least 1\n";
      return kUsage;
    }
    if (generate->parsed()) {
      cmd_generate(n, seed, *parse_instance_kind(kind_name), out);
      return kSuccess;
    }
    return cmd_bench(n, seed, settings, out);
  }

  const auto records = load(input, in, err);
  if (!records) return kUsage;

  if (check->parsed()) return cmd_check(*records, settings, out);
  if (solve->parsed()) return cmd_solve(*records, settings, emit == "family", precondition, out);

  Quaternion q;
  try {
    q = parse_quaternion(q_text);
  } catch (const Error& e) {
    err << "error: --q: " << e.detail() << "\n";
    return kUsage;
  }
  if (norm(q) == 0.0) {
    err << "error: --q must be nonzero\n";
    return kUsage;
  }
  return cmd_cost(*records, settings, q, out);
}

}  // namespace qwahba::cli
