#include "cosserat/config.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace cosserat {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void check_object(const json& j, const std::string& path, std::initializer_list<const char*> allowed)
{
    if (!j.is_object())
        throw ConfigError(path, "expected an object");
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items())
        if (!keys.count(key))
            throw ConfigError(join(path, key), "unknown key");
}

double number(const json& j, const std::string& path)
{
    if (!j.is_number())
        throw ConfigError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        throw ConfigError(path, "must be finite");
    return v;
}

double positive(const json& j, const std::string& path)
{
    const double v = number(j, path);
    if (!(v > 0.0))
        throw ConfigError(path, "must be positive");
    return v;
}

std::size_t count(const json& j, const std::string& path, std::size_t min = 0)
{
    if (!j.is_number_unsigned())
        throw ConfigError(path, "expected a non-negative integer");
    const std::size_t v = j.get<std::size_t>();
    if (v < min)
        throw ConfigError(path, "must be at least " + std::to_string(min));
    return v;
}

std::string string(const json& j, const std::string& path)
{
    if (!j.is_string())
        throw ConfigError(path, "expected a string");
    return j.get<std::string>();
}

Vec3 vec3(const json& j, const std::string& path)
{
    if (!j.is_array() || j.size() != 3)
        throw ConfigError(path, "expected an array of 3 numbers");
    return Vec3(number(j[0], index(path, 0)), number(j[1], index(path, 1)), number(j[2], index(path, 2)));
}

Vec3 positive_vec3(const json& j, const std::string& path)
{
    const Vec3 v = vec3(j, path);
    for (int i = 0; i < 3; ++i)
        if (!(v[i] > 0.0))
            throw ConfigError(index(path, i), "must be positive");
    return v;
}

/// Converts the library's own std::invalid_argument into a ConfigError at `path`.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(path, ex.what());
    }
}

ScalarEnvelope envelope_points(const json& j, const std::string& path)
{
    if (!j.is_array() || j.empty())
        throw ConfigError(path, "expected a non-empty array of [t, value] pairs");
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = index(path, i);
        if (!j[i].is_array() || j[i].size() != 2)
            throw ConfigError(p, "expected a [t, value] pair");
        pts.emplace_back(number(j[i][0], index(p, 0)), number(j[i][1], index(p, 1)));
    }
    return at_path(path, [&] { return ScalarEnvelope(std::move(pts)); });
}

using EnvelopeTable = std::map<std::string, ScalarEnvelope>;

ScalarEnvelope envelope_ref(const json& j, const std::string& path, const EnvelopeTable& table)
{
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        if (auto it = table.find(name); it != table.end())
            return it->second;
        if (name == "g")
            return default_g();
        if (name == "q")
            return q_envelope();
        if (name == "u")
            return u_envelope();
        throw ConfigError(path, "unknown envelope '" + name + "'");
    }
    return envelope_points(j, path);
}

VectorProfile profile(const json& j, const std::string& path, const EnvelopeTable& table)
{
    check_object(j, path, {"direction", "envelope"});
    if (!j.contains("direction") || !j.contains("envelope"))
        throw ConfigError(path, "needs 'direction' and 'envelope'");
    return VectorProfile{vec3(j["direction"], join(path, "direction")),
                         envelope_ref(j["envelope"], join(path, "envelope"), table)};
}

RodProperties rod(const json& j, const std::string& path)
{
    check_object(j, path, {"length", "elements", "mass_per_length", "inertia_per_length", "shear_stretch_stiffness",
                           "bend_twist_stiffness", "reference_area"});
    RodProperties p;
    if (j.contains("length"))
        p.length = positive(j["length"], join(path, "length"));
    if (j.contains("elements"))
        p.elements = count(j["elements"], join(path, "elements"), 2);
    if (j.contains("mass_per_length"))
        p.mass_per_length = positive(j["mass_per_length"], join(path, "mass_per_length"));
    if (j.contains("inertia_per_length"))
        p.inertia_per_length = positive_vec3(j["inertia_per_length"], join(path, "inertia_per_length"));
    if (j.contains("shear_stretch_stiffness"))
        p.shear_stretch_stiffness = positive_vec3(j["shear_stretch_stiffness"], join(path, "shear_stretch_stiffness"));
    if (j.contains("bend_twist_stiffness"))
        p.bend_twist_stiffness = positive_vec3(j["bend_twist_stiffness"], join(path, "bend_twist_stiffness"));
    if (j.contains("reference_area"))
        p.reference_area = positive(j["reference_area"], join(path, "reference_area"));
    return p;
}

Scenario inline_scenario(const json& j, const std::string& path, const EnvelopeTable& table)
{
    check_object(j, path, {"name", "rod", "boundary", "initial", "loads", "horizon", "h"});
    Scenario s;
    s.name = j.contains("name") ? string(j["name"], join(path, "name")) : "custom";
    if (j.contains("rod"))
        s.rod = rod(j["rod"], join(path, "rod"));
    if (j.contains("boundary")) {
        const std::string p = join(path, "boundary");
        s.boundary = at_path(p, [&] { return boundary_from_string(string(j["boundary"], p)); });
    }
    if (j.contains("initial")) {
        const std::string p = join(path, "initial");
        check_object(j["initial"], p, {"base", "frame_rotation"});
        if (j["initial"].contains("base"))
            s.initial.base = vec3(j["initial"]["base"], join(p, "base"));
        if (j["initial"].contains("frame_rotation"))
            s.initial.frame_rotation = vec3(j["initial"]["frame_rotation"], join(p, "frame_rotation"));
    }
    if (j.contains("loads")) {
        const std::string p = join(path, "loads");
        if (!j["loads"].is_array())
            throw ConfigError(p, "expected an array");
        for (std::size_t i = 0; i < j["loads"].size(); ++i) {
            const json& l = j["loads"][i];
            const std::string lp = index(p, i);
            check_object(l, lp, {"node", "force", "moment", "moment_frame"});
            NodalLoad load;
            if (!l.contains("node"))
                throw ConfigError(join(lp, "node"), "required");
            if (l["node"].is_string() && l["node"] == "tip")
                load.node = s.rod.elements;
            else
                load.node = count(l["node"], join(lp, "node"));
            if (load.node > s.rod.elements)
                throw ConfigError(join(lp, "node"), "beyond the last node " + std::to_string(s.rod.elements));
            if (l.contains("force"))
                load.force = profile(l["force"], join(lp, "force"), table);
            if (l.contains("moment"))
                load.moment = profile(l["moment"], join(lp, "moment"), table);
            if (l.contains("moment_frame")) {
                const std::string fp = join(lp, "moment_frame");
                load.moment_frame = at_path(fp, [&] { return frame_from_string(string(l["moment_frame"], fp)); });
            }
            s.loads.loads.push_back(load);
        }
    }
    if (!j.contains("horizon"))
        throw ConfigError(join(path, "horizon"), "required");
    s.horizon = number(j["horizon"], join(path, "horizon"));
    if (s.horizon < 0.0)
        throw ConfigError(join(path, "horizon"), "must be non-negative");
    if (j.contains("h"))
        s.h = positive(j["h"], join(path, "h"));
    return s;
}

Scenario preset_scenario(const json& j, const std::string& path, const EnvelopeTable& table)
{
    if (j.is_string())
        return at_path(path, [&] { return preset(j.get<std::string>(), envelope_ref("g", path, table)); });

    check_object(j, path, {"preset", "elements", "horizon", "h", "inclination_deg"});
    const std::string name = string(j["preset"], join(path, "preset"));
    const ScalarEnvelope g = envelope_ref("g", path, table);
    Scenario s;
    if (j.contains("inclination_deg")) {
        if (name != "flying_beam")
            throw ConfigError(join(path, "inclination_deg"), "only valid for the flying_beam preset");
        s = flying_beam(g, number(j["inclination_deg"], join(path, "inclination_deg")) * M_PI / 180.0);
    } else {
        s = at_path(join(path, "preset"), [&] { return preset(name, g); });
    }
    if (j.contains("elements"))
        s = with_elements(s, count(j["elements"], join(path, "elements"), 2));
    if (j.contains("horizon")) {
        s.horizon = number(j["horizon"], join(path, "horizon"));
        if (s.horizon < 0.0)
            throw ConfigError(join(path, "horizon"), "must be non-negative");
    }
    if (j.contains("h"))
        s.h = positive(j["h"], join(path, "h"));
    return s;
}

SweepLadder ladder(const json& j, const std::string& path)
{
    check_object(j, path, {"space", "time", "sample_interval"});
    SweepLadder l;
    if (j.contains("space")) {
        const std::string p = join(path, "space");
        const json& s = j["space"];
        check_object(s, p, {"elements", "reference_elements", "h"});
        if (s.contains("elements")) {
            if (!s["elements"].is_array())
                throw ConfigError(join(p, "elements"), "expected an array");
            l.elements.clear();
            for (std::size_t i = 0; i < s["elements"].size(); ++i)
                l.elements.push_back(count(s["elements"][i], index(join(p, "elements"), i), 2));
        }
        if (s.contains("reference_elements"))
            l.reference_elements = count(s["reference_elements"], join(p, "reference_elements"), 2);
        if (s.contains("h"))
            l.space_h = positive(s["h"], join(p, "h"));
    }
    if (j.contains("time")) {
        const std::string p = join(path, "time");
        const json& t = j["time"];
        check_object(t, p, {"steps", "reference_step", "elements"});
        if (t.contains("steps")) {
            if (!t["steps"].is_array())
                throw ConfigError(join(p, "steps"), "expected an array");
            l.steps.clear();
            for (std::size_t i = 0; i < t["steps"].size(); ++i)
                l.steps.push_back(positive(t["steps"][i], index(join(p, "steps"), i)));
        }
        if (t.contains("reference_step"))
            l.reference_step = positive(t["reference_step"], join(p, "reference_step"));
        if (t.contains("elements"))
            l.time_elements = count(t["elements"], join(p, "elements"), 2);
    }
    if (j.contains("sample_interval"))
        l.sample_interval = positive(j["sample_interval"], join(path, "sample_interval"));
    at_path(path, [&] { l.validate(); });
    return l;
}

json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json to_json(const ScalarEnvelope& e)
{
    json a = json::array();
    for (const auto& [t, v] : e.breakpoints())
        a.push_back(json::array({t, v}));
    return a;
}

json to_json(const VectorProfile& p) { return {{"direction", to_json(p.direction)}, {"envelope", to_json(p.envelope)}}; }

json to_json(const Scenario& s)
{
    json loads = json::array();
    for (const NodalLoad& l : s.loads.loads) {
        json o{{"node", l.node}};
        if (l.force)
            o["force"] = to_json(*l.force);
        if (l.moment) {
            o["moment"] = to_json(*l.moment);
            o["moment_frame"] = to_string(l.moment_frame);
        }
        loads.push_back(o);
    }
    const RodProperties& r = s.rod;
    return {
        {"name", s.name},
        {"rod",
         {{"length", r.length},
          {"elements", r.elements},
          {"mass_per_length", r.mass_per_length},
          {"inertia_per_length", to_json(r.inertia_per_length)},
          {"shear_stretch_stiffness", to_json(r.shear_stretch_stiffness)},
          {"bend_twist_stiffness", to_json(r.bend_twist_stiffness)},
          {"reference_area", r.reference_area}}},
        {"boundary", to_string(s.boundary)},
        {"initial", {{"base", to_json(s.initial.base)}, {"frame_rotation", to_json(s.initial.frame_rotation)}}},
        {"loads", loads},
        {"horizon", s.horizon},
        {"h", s.h},
    };
}

} // namespace

bool RunConfig::operator==(const RunConfig& o) const
{
    return scenario == o.scenario && model == o.model && stepper.h == o.stepper.h
           && stepper.newton_tol == o.stepper.newton_tol && stepper.newton_max_iters == o.stepper.newton_max_iters
           && output == o.output && envelopes == o.envelopes && ladder == o.ladder;
}

RunConfig parse_config(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& ex) {
        throw ConfigError("", std::string("malformed JSON: ") + ex.what());
    }
    check_object(j, "", {"schema_version", "scenario", "model", "stepper", "output", "envelopes", "convergence"});

    if (!j.contains("schema_version"))
        throw ConfigError("schema_version", "required");
    if (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != kSchemaVersion)
        throw ConfigError("schema_version", "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");

    RunConfig cfg;
    if (j.contains("envelopes")) {
        if (!j["envelopes"].is_object())
            throw ConfigError("envelopes", "expected an object");
        for (const auto& [name, def] : j["envelopes"].items())
            cfg.envelopes.emplace(name, envelope_points(def, join("envelopes", name)));
    }

    if (!j.contains("scenario"))
        throw ConfigError("scenario", "required");
    const json& sj = j["scenario"];
    if (sj.is_string() || (sj.is_object() && sj.contains("preset")))
        cfg.scenario = preset_scenario(sj, "scenario", cfg.envelopes);
    else
        cfg.scenario = inline_scenario(sj, "scenario", cfg.envelopes);

    if (j.contains("model"))
        cfg.model = at_path("model", [&] { return model_from_string(string(j["model"], "model")); });
    cfg.scenario.rod.model = cfg.model;

    cfg.stepper.h = cfg.scenario.h;
    if (j.contains("stepper")) {
        const json& st = j["stepper"];
        check_object(st, "stepper", {"h", "newton_tol", "newton_max_iters"});
        if (st.contains("h"))
            cfg.stepper.h = positive(st["h"], "stepper.h");
        if (st.contains("newton_tol"))
            cfg.stepper.newton_tol = positive(st["newton_tol"], "stepper.newton_tol");
        if (st.contains("newton_max_iters"))
            cfg.stepper.newton_max_iters = static_cast<int>(count(st["newton_max_iters"], "stepper.newton_max_iters", 1));
    }
    cfg.scenario.h = cfg.stepper.h;

    if (j.contains("output")) {
        const json& o = j["output"];
        check_object(o, "output", {"directory", "cadence", "snapshot_cadence"});
        if (o.contains("directory"))
            cfg.output.directory = string(o["directory"], "output.directory");
        if (o.contains("cadence"))
            cfg.output.cadence = count(o["cadence"], "output.cadence", 1);
        if (o.contains("snapshot_cadence"))
            cfg.output.snapshot_cadence = count(o["snapshot_cadence"], "output.snapshot_cadence");
    }

    if (j.contains("convergence"))
        cfg.ladder = ladder(j["convergence"], "convergence");

    at_path("scenario", [&] { cfg.scenario.validate(); });
    if (std::abs(cfg.scenario.horizon / cfg.stepper.h - std::round(cfg.scenario.horizon / cfg.stepper.h)) > 1e-9)
        throw ConfigError("stepper.h", "horizon is not a whole number of steps");
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string serialize_config(const RunConfig& cfg)
{
    json envelopes = json::object();
    for (const auto& [name, env] : cfg.envelopes)
        envelopes[name] = to_json(env);
    json sizes = json::array(), steps = json::array();
    for (std::size_t n : cfg.ladder.elements)
        sizes.push_back(n);
    for (double h : cfg.ladder.steps)
        steps.push_back(h);

    const json j{
        {"schema_version", kSchemaVersion},
        {"scenario", to_json(cfg.scenario)},
        {"model", to_string(cfg.model)},
        {"stepper",
         {{"h", cfg.stepper.h}, {"newton_tol", cfg.stepper.newton_tol}, {"newton_max_iters", cfg.stepper.newton_max_iters}}},
        {"output",
         {{"directory", cfg.output.directory},
          {"cadence", cfg.output.cadence},
          {"snapshot_cadence", cfg.output.snapshot_cadence}}},
        {"envelopes", envelopes},
        {"convergence",
         {{"space", {{"elements", sizes}, {"reference_elements", cfg.ladder.reference_elements}, {"h", cfg.ladder.space_h}}},
          {"time", {{"steps", steps}, {"reference_step", cfg.ladder.reference_step}, {"elements", cfg.ladder.time_elements}}},
          {"sample_interval", cfg.ladder.sample_interval}}},
    };
    return j.dump(2) + "\n";
}

std::string config_hash(const RunConfig& cfg)
{
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : serialize_config(cfg)) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

} // namespace cosserat
