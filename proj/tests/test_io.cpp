#include "cosserat/config.hpp"
#include "cosserat/output.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cosserat;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "cosserat_test_io";
    fs::create_directories(dir);
    return dir / name;
}

std::string error_path(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "<no error>";
}

DiagnosticsRecord sample_record()
{
    DiagnosticsRecord r;
    r.k = 3;
    r.t = 3e-4;
    r.energy = {0.1, 0.2, 0.3, 1.0 / 3.0};
    r.length = 10.000001;
    r.e_min = 0.99;
    r.e_max = 1.02;
    r.volume_deviation_max = 1e-17;
    r.momentum = Vec3(-1.5, 0.0, 2e-300);
    r.ortho_defect = 4.4e-16;
    return r;
}

} // namespace

TEST_CASE("minimal config gets defaults")
{
    const RunConfig c = parse_config(R"({"schema_version": 1, "scenario": "pure_stretching"})");
    CHECK(c.stepper.newton_tol == 1e-12);
    CHECK(c.output.cadence == 1);
    CHECK(c.output.snapshot_cadence == 0);
    CHECK(c.model == Model::modified);
    CHECK(c.stepper.h == 1e-4);
    CHECK(c.scenario == pure_stretching());
}

TEST_CASE("config errors name the field")
{
    CHECK(error_path(R"({"schema_version": 1, "scenario": "pure_stretching", "stepper": {"h": -1e-3}})") == "stepper.h");
    CHECK(error_path(R"({"schema_version": 1, "scenario": "pure_stretching", "envelopes": {"g": [[0, 0], [0, 1]]}})")
          == "envelopes.g");
    CHECK(error_path(R"({"schema_version": 1, "scenario": "pure_stretching", "stepper": {"dt": 1e-3}})") == "stepper.dt");
    CHECK(error_path(R"({"schema_version": 1, "scenario": "pure_stretching", "colour": 1})") == "colour");
    CHECK(error_path(R"({"scenario": "pure_stretching"})") == "schema_version");
    CHECK(error_path(R"({"schema_version": 2, "scenario": "pure_stretching"})") == "schema_version");
    CHECK(error_path(R"({"schema_version": 1, "scenario": "spaghetti"})") == "scenario");
    CHECK(error_path(R"({"schema_version": 1, "scenario": "pure_stretching", "output": {"cadence": 0}})")
          == "output.cadence");
    CHECK(error_path(R"({"schema_version": 1, "scenario": "pure_stretching", "model": "rigid"})") == "model");
    CHECK(error_path(R"({"schema_version": 1, "scenario": {"preset": "convergence", "inclination_deg": 10}})")
          == "scenario.inclination_deg");
    CHECK(error_path(R"({"schema_version": 1, "scenario": {"horizon": 1, "rod": {"elements": 4},
                         "loads": [{"node": 9, "force": {"direction": [0, 0, 1], "envelope": "u"}}]}})")
          == "scenario.loads[0].node");
    CHECK(error_path(R"({"schema_version": 1, "scenario": {"horizon": 1, "rod": {"bend_twist_stiffness": [1, 0, 1]}}})")
          == "scenario.rod.bend_twist_stiffness[1]");
    CHECK(error_path("{not json") == "");

    try {
        parse_config(R"({"schema_version": 1, "scenario": "pure_stretching", "stepper": {"h": -1e-3}})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("stepper.h") != std::string::npos);
    }
}

TEST_CASE("preset overrides and named envelopes")
{
    const RunConfig c = parse_config(R"({
        "schema_version": 1,
        "scenario": {"preset": "flying_beam", "elements": 20, "horizon": 10, "inclination_deg": 30},
        "envelopes": {"g": [[0, 0], [1, 5], [2, 0]]},
        "stepper": {"h": 1e-3},
        "model": "standard"
    })");
    CHECK(c.scenario.rod.elements == 20);
    CHECK(c.scenario.horizon == 10.0);
    CHECK(c.scenario.h == 1e-3);
    CHECK(c.stepper.h == 1e-3);
    CHECK(c.model == Model::standard);
    CHECK(c.scenario.loads.force(0, 1.0) == Vec3(0.5, 0.0, 0.0));
    const Vec3 t = c.scenario.initial.frame() * Vec3::UnitZ();
    CHECK((t - Vec3(std::cos(M_PI / 6), std::sin(M_PI / 6), 0.0)).norm() < 1e-14);
}

TEST_CASE("inline scenario")
{
    const RunConfig c = parse_config(R"({
        "schema_version": 1,
        "scenario": {
            "name": "bar",
            "rod": {"length": 2, "elements": 4, "mass_per_length": 0.5},
            "boundary": "cantilever",
            "loads": [{"node": "tip", "force": {"direction": [0, 0, 2], "envelope": "ramp"},
                       "moment": {"direction": [1, 0, 0], "envelope": [[0, 1], [1, 1]]}, "moment_frame": "body"}],
            "horizon": 0.5
        },
        "envelopes": {"ramp": [[0, 0], [1, 1]]}
    })");
    const Scenario& s = c.scenario;
    CHECK(s.name == "bar");
    CHECK(s.rod.length == 2.0);
    CHECK(s.rod.mass_per_length == 0.5);
    CHECK(s.boundary == BoundaryKind::cantilever);
    REQUIRE(s.loads.loads.size() == 1);
    CHECK(s.loads.loads[0].node == 4);
    CHECK(s.loads.force(4, 0.5) == Vec3(0.0, 0.0, 1.0));
    CHECK(s.loads.loads[0].moment_frame == Frame::body);
}

TEST_CASE("config round trip")
{
    const char* texts[] = {
        R"({"schema_version": 1, "scenario": "flying_beam"})",
        R"({"schema_version": 1, "scenario": {"preset": "bending_stretching", "elements": 10}, "model": "standard",
            "envelopes": {"g": [[0, 0], [2.5, 123.456], [5, 0]]}, "output": {"cadence": 7, "snapshot_cadence": 3},
            "convergence": {"space": {"elements": [5, 10], "reference_elements": 20}, "sample_interval": 0.05}})",
    };
    for (const char* text : texts) {
        const RunConfig a = parse_config(text);
        const std::string s1 = serialize_config(a);
        const RunConfig b = parse_config(s1);
        CHECK(a == b);
        CHECK(serialize_config(b) == s1);
        CHECK(config_hash(a) == config_hash(b));
    }
    CHECK(config_hash(parse_config(texts[0])) != config_hash(parse_config(texts[1])));
    CHECK(config_hash(parse_config(texts[0])).size() == 16);
}

TEST_CASE("load_config reports unreadable paths")
{
    try {
        load_config("/definitely/not/here.json");
        FAIL("expected runtime_error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("/definitely/not/here.json") != std::string::npos);
    }
}

TEST_CASE("time-series schema")
{
    const std::string golden = "k,t,H_total,T_trans,T_rot,U_lin,U_ang,length,e_min,e_max,vol_dev_max,px,py,pz,ortho_defect";
    std::string header;
    for (const std::string& c : timeseries_columns())
        header += (header.empty() ? "" : ",") + c;
    CHECK(header == golden);

    const fs::path empty = scratch("empty.csv");
    write_timeseries({}, empty);
    CHECK(slurp(empty) == golden + "\n");
    CHECK(fs::exists(scratch("empty.meta.json")));

    const fs::path one = scratch("one.csv");
    write_timeseries({sample_record()}, one, {{"config_hash", "abc"}});
    const std::string text = slurp(one);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
    const std::string meta = slurp(scratch("one.meta.json"));
    CHECK(meta.find("\"config_hash\": \"abc\"") != std::string::npos);
    CHECK(meta.find("\"rows\": 1") != std::string::npos);
}

TEST_CASE("records print losslessly and deterministically")
{
    const DiagnosticsRecord r = sample_record();
    const std::string line = format_record(r);
    std::vector<double> v;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');)
        v.push_back(std::strtod(cell.c_str(), nullptr));
    REQUIRE(v.size() == timeseries_columns().size());
    CHECK(v[0] == 3.0);
    CHECK(v[1] == r.t);
    CHECK(v[2] == r.energy.total());
    CHECK(v[6] == r.energy.angular_strain);
    CHECK(v[10] == r.volume_deviation_max);
    CHECK(v[13] == r.momentum.z());

    const fs::path a = scratch("a.csv"), b = scratch("b.csv");
    const std::vector<DiagnosticsRecord> rs(5, r);
    write_timeseries(rs, a);
    write_timeseries(rs, b);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("snapshot file")
{
    RodProperties p;
    p.elements = 4;
    RodState s = straight_rod(p);
    s.step = 2;
    s.h = 0.5;
    const fs::path path = scratch("snap.csv");
    SnapshotWriter w(path);
    w.write(s);
    w.close();
    const std::string text = slurp(path);
    CHECK(std::count(text.begin(), text.end(), '\n') == 6);
    CHECK(text.rfind("k,t,node,x,y,z,r00,r01,r02,r10,r11,r12,r20,r21,r22\n", 0) == 0);
    CHECK(text.find("2,1,4,0,0,10,1,0,0,0,1,0,0,0,1\n") != std::string::npos);
}

TEST_CASE("unwritable paths are reported")
{
    CHECK_THROWS_AS(write_timeseries({}, "/nonexistent-dir/x.csv"), std::runtime_error);
}

TEST_CASE("shipped example configs parse")
{
    std::size_t seen = 0;
    for (const auto& entry : fs::directory_iterator(COSSERAT_CONFIG_DIR)) {
        if (entry.path().extension() != ".json")
            continue;
        CAPTURE(entry.path().string());
        CHECK_NOTHROW(load_config(entry.path()));
        ++seen;
    }
    CHECK(seen >= 4);
}
