#include "midpoint/cli/config.hpp"

#include <fstream>
#include <set>

namespace midpoint::cli {

using nlohmann::json;

namespace {

// Reads keys of one JSON object and rejects whatever was not consumed.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  template <typename T>
  T required(const std::string& key) {
    if (!j_.contains(key)) throw ConfigError("missing required key '" + qualified(key) + "'");
    return get<T>(key);
  }

  template <typename T>
  std::optional<T> optional(const std::string& key) {
    if (!j_.contains(key)) return std::nullopt;
    return get<T>(key);
  }

  template <typename T>
  void optional_into(const std::string& key, T& out) {
    if (auto v = optional<T>(key)) out = std::move(*v);
  }

  const json& child(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }
  bool has(const std::string& key) const { return j_.contains(key); }
  std::string qualified(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError("unknown key '" + qualified(key) + "'");
    }
  }

 private:
  std::string where() const { return path_.empty() ? "config" : "'" + path_ + "'"; }

  template <typename T>
  T get(const std::string& key) {
    seen_.insert(key);
    const json& v = j_.at(key);
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw ConfigError("key '" + qualified(key) + "': expected a number");
    } else if constexpr (std::is_same_v<T, long> || std::is_same_v<T, std::uint64_t>) {
      if (!v.is_number_integer()) {
        throw ConfigError("key '" + qualified(key) + "': expected an integer");
      }
      if constexpr (std::is_same_v<T, std::uint64_t>) {
        if (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0) {
          throw ConfigError("key '" + qualified(key) + "': expected a non-negative integer");
        }
      }
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError("key '" + qualified(key) + "': expected a boolean");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError("key '" + qualified(key) + "': expected a string");
    }
    try {
      return v.get<T>();
    } catch (const json::exception&) {
      throw ConfigError("key '" + qualified(key) + "': wrong type");
    }
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

MappingSpec parse_mapping(const json& j) {
  ObjectReader r(j, "mapping");
  MappingSpec m;
  m.kind = r.required<std::string>("kind");
  if (m.kind == "affine") {
    m.A = r.required<std::vector<std::vector<double>>>("A");
    m.b = r.required<std::vector<double>>("b");
  } else if (m.kind != "flip") {
    throw ConfigError("key 'mapping.kind': unknown mapping '" + m.kind + "'");
  }
  m.envelope = r.optional<std::string>("envelope");
  r.finish();
  return m;
}

ContractionSpec parse_contraction(const json& j) {
  ObjectReader r(j, "contraction");
  ContractionSpec c;
  c.kind = r.required<std::string>("kind");
  if (c.kind == "scale") {
    c.alpha = r.required<double>("alpha");
  } else if (c.kind != "contraction_half") {
    throw ConfigError("key 'contraction.kind': unknown contraction '" + c.kind + "'");
  }
  r.finish();
  return c;
}

ScheduleSpec parse_schedule(const json& j) {
  ObjectReader r(j, "schedule");
  ScheduleSpec s;
  s.family = r.required<std::string>("family");
  if (s.family == "power") {
    s.s = r.required<double>("s");
    s.b_const = r.optional<double>("b_const");
  } else if (s.family == "custom") {
    s.table = r.required<std::vector<std::array<double, 4>>>("table");
  } else if (s.family != "paper") {
    throw ConfigError("key 'schedule.family': unknown family '" + s.family + "'");
  }
  s.envelope = r.optional<std::string>("envelope");
  s.epsilon = r.optional<double>("epsilon");
  r.finish();
  return s;
}

Envelope envelope_by_name(const std::string& name, const std::string& key) {
  if (name == "unit") return envelopes::unit();
  if (name == "geometric") return envelopes::geometric();
  if (name == "harmonic") return envelopes::harmonic();
  throw ConfigError("key '" + key + "': unknown envelope '" + name + "'");
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  ObjectReader r(j, "");
  ExperimentConfig cfg;
  if (r.has("mapping")) cfg.mapping = parse_mapping(r.child("mapping"));
  if (r.has("contraction")) cfg.contraction = parse_contraction(r.child("contraction"));
  if (r.has("schedule")) cfg.schedule = parse_schedule(r.child("schedule"));
  r.optional_into("schemes", cfg.schemes);
  cfg.x1 = r.required<std::vector<double>>("x1");
  r.optional_into("norm_p", cfg.norm_p);
  r.optional_into("tol_step", cfg.tol_step);
  r.optional_into("tol_inner", cfg.tol_inner);
  r.optional_into("max_inner", cfg.max_inner);
  r.optional_into("max_outer", cfg.max_outer);
  r.optional_into("min_outer", cfg.min_outer);
  r.optional_into("max_power_composition", cfg.max_power_composition);
  r.optional_into("force", cfg.force);
  r.optional_into("normal_structure", cfg.normal_structure);
  r.optional_into("envelope_horizon", cfg.envelope_horizon);
  r.optional_into("envelope_samples", cfg.envelope_samples);
  r.optional_into("output", cfg.output);
  cfg.seed = r.optional<std::uint64_t>("seed");
  r.finish();

  if (cfg.x1.empty()) throw ConfigError("key 'x1': must have at least one coordinate");
  if (cfg.schemes.empty()) throw ConfigError("key 'schemes': must name at least one scheme");
  for (const auto& name : cfg.schemes) {
    if (!parse_scheme(name)) throw ConfigError("key 'schemes': unknown scheme '" + name + "'");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& cfg) {
  json mapping = {{"kind", cfg.mapping.kind}};
  if (cfg.mapping.kind == "affine") {
    mapping["A"] = cfg.mapping.A;
    mapping["b"] = cfg.mapping.b;
  }
  if (cfg.mapping.envelope) mapping["envelope"] = *cfg.mapping.envelope;

  json contraction = {{"kind", cfg.contraction.kind}};
  if (cfg.contraction.alpha) contraction["alpha"] = *cfg.contraction.alpha;

  json schedule = {{"family", cfg.schedule.family}};
  if (cfg.schedule.s) schedule["s"] = *cfg.schedule.s;
  if (cfg.schedule.b_const) schedule["b_const"] = *cfg.schedule.b_const;
  if (cfg.schedule.family == "custom") schedule["table"] = cfg.schedule.table;
  if (cfg.schedule.envelope) schedule["envelope"] = *cfg.schedule.envelope;
  if (cfg.schedule.epsilon) schedule["epsilon"] = *cfg.schedule.epsilon;

  json j = {
      {"mapping", mapping},
      {"contraction", contraction},
      {"schedule", schedule},
      {"schemes", cfg.schemes},
      {"x1", cfg.x1},
      {"norm_p", cfg.norm_p},
      {"tol_step", cfg.tol_step},
      {"tol_inner", cfg.tol_inner},
      {"max_inner", cfg.max_inner},
      {"max_outer", cfg.max_outer},
      {"min_outer", cfg.min_outer},
      {"max_power_composition", cfg.max_power_composition},
      {"force", cfg.force},
      {"normal_structure", cfg.normal_structure},
      {"envelope_horizon", cfg.envelope_horizon},
      {"envelope_samples", cfg.envelope_samples},
      {"output", cfg.output},
  };
  if (cfg.seed) j["seed"] = *cfg.seed;
  return j;
}

Mapping build_mapping(const MappingSpec& spec) {
  std::optional<Envelope> env;
  if (spec.envelope) env = envelope_by_name(*spec.envelope, "mapping.envelope");
  if (spec.kind == "flip") return make_flip_map(env.value_or(envelopes::geometric()));
  if (spec.kind == "affine") {
    if (spec.A.empty()) throw ConfigError("key 'mapping.A': empty matrix");
    return make_affine(to_matrix(spec.A), Vector(spec.b), env.value_or(Envelope{}));
  }
  throw ConfigError("key 'mapping.kind': unknown mapping '" + spec.kind + "'");
}

Contraction build_contraction(const ContractionSpec& spec) {
  if (spec.kind == "contraction_half") return make_contraction_half();
  if (spec.kind == "scale") return make_scaling_contraction(spec.alpha.value_or(0.5));
  throw ConfigError("key 'contraction.kind': unknown contraction '" + spec.kind + "'");
}

Schedule build_schedule(const ScheduleSpec& spec) {
  std::optional<Schedule> sched;
  if (spec.family == "paper") {
    sched = make_paper_schedule();
  } else if (spec.family == "power") {
    sched = make_power_schedule(spec.s.value_or(1.0), spec.b_const.value_or(0.0));
  } else if (spec.family == "custom") {
    if (spec.table.empty()) throw ConfigError("key 'schedule.table': empty table");
    std::vector<ScheduleValues> rows;
    rows.reserve(spec.table.size());
    for (const auto& r : spec.table) rows.push_back({r[0], r[1], r[2], r[3]});
    sched = make_table_schedule(std::move(rows));
  } else {
    throw ConfigError("key 'schedule.family': unknown family '" + spec.family + "'");
  }
  if (spec.envelope) sched = sched->with_envelope(envelope_by_name(*spec.envelope, "schedule.envelope"));
  if (spec.epsilon) sched = sched->with_epsilon(*spec.epsilon);
  return *sched;
}

SchemeKind build_scheme(const std::string& name) {
  const auto s = parse_scheme(name);
  if (!s) throw ConfigError("unknown scheme '" + name + "'");
  return SchemeKind::of(*s);
}

SolverConfig build_solver_config(const ExperimentConfig& cfg, const std::string& scheme) {
  return SolverConfig{
      .scheme = build_scheme(scheme),
      .mapping = build_mapping(cfg.mapping),
      .contraction = build_contraction(cfg.contraction),
      .schedule = build_schedule(cfg.schedule),
      .x1 = Vector(cfg.x1),
      .max_outer = cfg.max_outer,
      .tol_step = cfg.tol_step,
      .min_outer = cfg.min_outer,
      .tol_inner = cfg.tol_inner,
      .max_inner = cfg.max_inner,
      .max_power_composition = cfg.max_power_composition,
      .norm = NormSpec{cfg.norm_p},
      .force = cfg.force,
  };
}

}  // namespace midpoint::cli
