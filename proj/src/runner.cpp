#include "sumlab/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sumlab/koshlyakov.hpp"
#include "sumlab/motohashi.hpp"
#include "sumlab/special.hpp"
#include "sumlab/verifiers.hpp"

namespace sumlab {

namespace {

using nlohmann::json;

struct Defaults {
  std::string fn = "gaussian";
  ContourSpec contour{0.5, 40.0, 0.05};
  std::uint64_t cutoff = 20;
  Smoothing smoothing = Smoothing::none;
  std::string sequence = "e";
};

Defaults defaults_for(const std::string& id) {
  Defaults d;
  if (id == "theorem_1_1") d.sequence = "sigma";
  if (id == "davenport") {
    d.cutoff = 1000000;
    d.smoothing = Smoothing::abel;
    d.sequence = "mu";
  }
  if (id == "voronoi_sigma" || id == "theorem_1_3") d.cutoff = 50;
  if (id == "koshlyakov_2_5" || id == "theorem_2_1") d.contour = koshlyakov_default_contour(KoshlyakovRoute::reflected);
  if (id == "parseval_3_5" || id == "rearrangement_3") d.contour = {0.75, 60.0, 0.05};
  if (id == "rearrangement_3") d.cutoff = 100;
  return d;
}

double num(const RunConfig& c, const std::string& key, double fallback) {
  auto it = c.params.find(key);
  return it == c.params.end() ? fallback : it->second;
}

ArithmeticSequence make_sequence(const std::string& name, std::uint64_t cutoff) {
  if (name.rfind("b=", 0) == 0) {
    std::vector<std::uint64_t> support;
    std::stringstream ss(name.substr(2));
    std::string item;
    while (std::getline(ss, item, ',')) support.push_back(std::stoull(item));
    if (support.empty()) throw DomainError("sequence 'b=': empty support");
    return ArithmeticSequence::from_b(
        [support](std::uint64_t n) {
          for (auto d : support)
            if (d == n) return cplx(1.0);
          return cplx(0.0);
        },
        cutoff, name);
  }
  return sequences::by_name(name, cutoff);
}

DivisorSet parse_set(const std::string& text) {
  std::vector<std::uint64_t> members;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto v = std::stoll(item);
    if (v <= 0) throw DomainError("S: members must be positive integers");
    members.push_back(static_cast<std::uint64_t>(v));
  }
  return DivisorSet(std::move(members));
}

}  // namespace

const std::vector<IdentityInfo>& identity_registry() {
  static const std::vector<IdentityInfo> registry{
      {"muntz", "Muntz formula: zeta-weighted inverse Mellin transform against sum f(n/x) - x int f",
       "fn=gaussian x=1 c=0.5 height=40 step=0.05 N=20"},
      {"muntz2", "zeta^2 Muntz-type formula, divisor-weighted readout",
       "fn=gaussian x=1 c=0.5 height=40 step=0.05 N=20"},
      {"poisson", "Poisson summation for Fourier cosine transforms", "fn=gaussian N=20"},
      {"berndt", "Berndt restricted-divisor summation formula", "fn=gaussian sequence=e S=1 N=20 m_terms=auto"},
      {"theorem_1_1", "Fourier-cosine series against Mobius-weighted Muntz inverses",
       "fn=gaussian sequence=sigma c=0.5 height=40 step=0.05 N=20"},
      {"davenport", "Davenport fractional-part expansion (Abel smoothed)",
       "sequence=mu x=sqrt2 N=1000000 smoothing=abel delta=10/N"},
      {"voronoi_sigma", "Voronoi summation formula for the divisor function", "fn=gaussian N=50 gamma_shift=0"},
      {"theorem_1_3", "Voronoi-kernel series against zeta^2 Muntz inverses",
       "fn=gaussian sequence=e c=0.5 height=40 step=0.05 N=50"},
      {"koshlyakov_2_5", "Koshlyakov function: series against the reflected line integral",
       "x=1 c=0.5 height=60 step=0.05"},
      {"mellin_2_2", "Mellin transform of the Koshlyakov test function", "s_re=0.3 s_im=0 z=1"},
      {"theorem_2_1", "Koshlyakov-type summation with the theta-deficit test function",
       "sequence=e z=1 c=0.5 height=60 step=0.05 N=20"},
      {"beta_3_4", "Beta integral as a Gamma ratio", "s_re=0.5 s_im=0 v_re=1.5 v_im=0"},
      {"parseval_3_5", "Parseval formula for the shifted theta-type series",
       "a_re=0 a_im=0 x=1 c=0.75 height=60 step=0.05"},
      {"rearrangement_3", "Three-route rearrangement of the divisor-weighted cosine series",
       "A=1 N=100 m_cutoff=50 c=0.75 height=60 step=0.05"},
  };
  return registry;
}

bool is_registered(const std::string& id) {
  for (const auto& i : identity_registry())
    if (i.id == id) return true;
  return false;
}

void RunConfig::validate() const {
  if (!is_registered(identity_id)) throw DomainError("unknown identity '" + identity_id + "'");
  if (tolerance && !(*tolerance > 0.0)) throw DomainError("tolerance must be > 0");
  if (sweep) {
    if (sweep->parameter != "N" && sweep->parameter != "T" && sweep->parameter != "h")
      throw DomainError("sweep parameter must be N, T or h");
    if (!(sweep->factor > 0.0) || sweep->factor == 1.0) throw DomainError("sweep factor must be > 0 and != 1");
    if (sweep->steps < 1) throw DomainError("sweep steps must be >= 1");
  }
}

double parse_real(const std::string& text) {
  if (text == "sqrt2") return std::sqrt(2.0);
  if (text == "golden") return 0.5 * (1.0 + std::sqrt(5.0));
  if (text == "pi") return kPi;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw DomainError("not a number: '" + text + "'");
  return v;
}

void apply_config_text(RunConfig& into, const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("config: top level must be an object");
  auto real = [](const json& v) { return v.is_string() ? parse_real(v.get<std::string>()) : v.get<double>(); };
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const auto& key = it.key();
      const auto& v = it.value();
      if (key == "identity") into.identity_id = v.get<std::string>();
      else if (key == "fn") into.function_label = v.get<std::string>();
      else if (key == "tol") into.tolerance = real(v);
      else if (key == "out") into.output_path = v.get<std::string>();
      else if (key == "sequence") into.sequence = v.get<std::string>();
      else if (key == "S") into.set_S = v.is_string() ? v.get<std::string>() : std::to_string(v.get<long long>());
      else if (key == "fn_params") {
        for (auto f = v.begin(); f != v.end(); ++f) into.function_params[f.key()] = real(f.value());
      } else if ((key == "contour" || key == "series" || key == "sweep" || key == "fn_params") && !v.is_object()) {
        throw DomainError("config: '" + key + "' must be an object");
      } else if (key == "contour") {
        if (v.contains("c")) into.abscissa = real(v["c"]);
        if (v.contains("height")) into.height = real(v["height"]);
        if (v.contains("step")) into.step = real(v["step"]);
      } else if (key == "series") {
        if (v.contains("N")) into.cutoff = v["N"].get<std::uint64_t>();
        if (v.contains("smoothing")) into.smoothing = parse_smoothing(v["smoothing"].get<std::string>());
        if (v.contains("delta")) into.delta = real(v["delta"]);
      } else if (key == "sweep") {
        SweepSpec s;
        s.parameter = v.at("param").get<std::string>();
        if (v.contains("factor")) s.factor = real(v["factor"]);
        if (v.contains("steps")) s.steps = v["steps"].get<int>();
        into.sweep = s;
      } else if (v.is_number() || v.is_string()) {
        into.params[key] = real(v);
      } else {
        throw DomainError("config: unsupported key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("config: malformed value: ") + e.what());
  }
}

VerificationReport run(const RunConfig& config) {
  config.validate();
  const std::string& id = config.identity_id;
  const Defaults d = defaults_for(id);
  ContourSpec contour = d.contour;
  if (config.abscissa) contour.abscissa = *config.abscissa;
  if (config.height) contour.height = *config.height;
  if (config.step) contour.step = *config.step;
  SeriesSpec series{config.cutoff.value_or(d.cutoff), config.smoothing.value_or(d.smoothing),
                    config.delta.value_or(0.0)};
  const double tol = config.tolerance.value_or(default_tolerance(id));
  const std::string seq_name = config.sequence.empty() ? d.sequence : config.sequence;
  const QuadOptions quad;
  auto fn = [&] {
    return make_test_function(config.function_label.empty() ? d.fn : config.function_label, config.function_params);
  };

  if (id == "muntz") return verify_muntz(fn(), num(config, "x", 1.0), series, contour, quad, tol);
  if (id == "muntz2") return verify_muntz2(fn(), num(config, "x", 1.0), series, contour, quad, tol);
  if (id == "poisson") return verify_poisson(fn(), series, quad, tol);
  if (id == "theorem_1_1")
    return verify_theorem_1_1(make_sequence(seq_name, series.cutoff), fn(), series, contour, quad, tol);
  if (id == "berndt") {
    const auto S = parse_set(config.set_S.empty() ? "1" : config.set_S);
    return verify_berndt(make_sequence(seq_name, series.cutoff), S, fn(), series, quad, tol,
                         static_cast<std::uint64_t>(num(config, "m_terms", 0.0)));
  }
  if (id == "davenport")
    return verify_davenport(make_sequence(seq_name, series.cutoff), num(config, "x", std::sqrt(2.0)), series, tol);
  if (id == "voronoi_sigma") return verify_voronoi_sigma(fn(), series, quad, tol, num(config, "gamma_shift", 0.0));
  if (id == "theorem_1_3")
    return verify_theorem_1_3(make_sequence(seq_name, series.cutoff), fn(), series, contour, quad, tol);
  if (id == "koshlyakov_2_5") return verify_koshlyakov_reflected(num(config, "x", 1.0), contour, tol);
  if (id == "mellin_2_2")
    return verify_koshlyakov_mellin(cplx(num(config, "s_re", 0.3), num(config, "s_im", 0.0)), num(config, "z", 1.0),
                                    quad, tol);
  if (id == "theorem_2_1")
    return verify_theorem_2_1(make_sequence(seq_name, series.cutoff), num(config, "z", 1.0), series, contour, quad,
                              tol);
  if (id == "beta_3_4")
    return verify_beta(cplx(num(config, "s_re", 0.5), num(config, "s_im", 0.0)),
                       cplx(num(config, "v_re", 1.5), num(config, "v_im", 0.0)), quad, tol);
  if (id == "parseval_3_5")
    return parseval_check(cplx(num(config, "a_re", 0.0), num(config, "a_im", 0.0)), num(config, "x", 1.0), contour,
                          quad, tol);
  if (id == "rearrangement_3") {
    auto in = MotohashiInput::gaussian(num(config, "A", 1.0));
    in.series = series;
    in.contour = contour;
    in.m_cutoff = static_cast<std::uint64_t>(num(config, "m_cutoff", 50.0));
    return verify_rearrangement(in, quad, tol);
  }
  throw DomainError("unknown identity '" + id + "'");
}

SweepResult sweep(const RunConfig& config) {
  config.validate();
  if (!config.sweep) throw DomainError("sweep: no sweep block");
  const auto& s = *config.sweep;
  const Defaults d = defaults_for(config.identity_id);
  SweepResult out;
  RunConfig step = config;
  step.sweep.reset();
  double base = 0.0;
  if (s.parameter == "N") base = static_cast<double>(config.cutoff.value_or(d.cutoff));
  if (s.parameter == "T") base = config.height.value_or(d.contour.height);
  if (s.parameter == "h") base = config.step.value_or(d.contour.step);
  std::vector<double> xs, ys;
  for (int i = 0; i < s.steps; ++i) {
    double v = base * std::pow(s.factor, i);
    if (s.parameter == "N") {
      v = std::max(1.0, std::round(v));
      step.cutoff = static_cast<std::uint64_t>(v);
    }
    if (s.parameter == "T") step.height = v;
    if (s.parameter == "h") step.step = v;
    out.values.push_back(v);
    out.reports.push_back(run(step));
    const double err = out.reports.back().abs_err;
    if (err > 0.0 && std::isfinite(err)) {
      xs.push_back(std::log(v));
      ys.push_back(std::log(err));
    }
  }
  if (xs.size() < 2) {
    out.order = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  out.order = sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
  return out;
}

std::string list_identities(bool machine) {
  if (machine) {
    json arr = json::array();
    for (const auto& i : identity_registry())
      arr.push_back({{"id", i.id},
                     {"anchor", i.anchor},
                     {"parameters", i.parameters},
                     {"default_tolerance", default_tolerance(i.id)}});
    return arr.dump(2) + "\n";
  }
  std::ostringstream os;
  for (const auto& i : identity_registry()) {
    char tol[32];
    std::snprintf(tol, sizeof tol, "%.0e", default_tolerance(i.id));
    os << i.id << std::string(i.id.size() < 17 ? 17 - i.id.size() : 1, ' ') << tol << "  " << i.anchor << "\n"
       << std::string(26, ' ') << i.parameters << "\n";
  }
  return os.str();
}

void write_report(const std::string& path, const std::string& json_text) {
  namespace fs = std::filesystem;
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw DomainError("cannot write report to '" + path + "'");
  out << json_text << "\n";
  if (!out) throw DomainError("failed while writing '" + path + "'");
}

std::string resolve_output_path(const RunConfig& config) {
  if (!config.output_path.empty()) return config.output_path;
  if (const char* dir = std::getenv("SUMLAB_OUT_DIR"); dir && *dir)
    return (std::filesystem::path(dir) / (config.identity_id + ".json")).string();
  return {};
}

}  // namespace sumlab
