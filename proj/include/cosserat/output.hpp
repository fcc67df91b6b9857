#pragma once

#include "cosserat/diagnostics.hpp"
#include "cosserat/experiments.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace cosserat {

/// k,t,H_total,T_trans,T_rot,U_lin,U_ang,length,e_min,e_max,vol_dev_max,px,py,pz,ortho_defect
const std::vector<std::string>& timeseries_columns();
/// k,t,node,x,y,z,r00,r01,r02,r10,r11,r12,r20,r21,r22
const std::vector<std::string>& snapshot_columns();
/// elements,h,eps_pos,eps_rot,nested
const std::vector<std::string>& convergence_columns();

/// One CSV line (no newline); reals printed with %.17g.
std::string format_record(const DiagnosticsRecord& r);

/// foo/bar.csv -> foo/bar.meta.json
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

/// Line-by-line CSV writer. Throws std::runtime_error naming the path on
/// I/O failure.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);
    void row(const std::string& line);
    void close();
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

class TimeseriesWriter {
public:
    explicit TimeseriesWriter(const std::filesystem::path& path) : csv_(path, timeseries_columns()) {}
    void write(const DiagnosticsRecord& r) { csv_.row(format_record(r)); }
    void close() { csv_.close(); }

private:
    CsvWriter csv_;
};

/// One row per node per snapshot, rotations row-major.
class SnapshotWriter {
public:
    explicit SnapshotWriter(const std::filesystem::path& path) : csv_(path, snapshot_columns()) {}
    void write(const RodState& s);
    void close() { csv_.close(); }

private:
    CsvWriter csv_;
};

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Time-series CSV at `path` plus its sidecar metadata.
void write_timeseries(const std::vector<DiagnosticsRecord>& records, const std::filesystem::path& path,
                      const nlohmann::json& metadata = nlohmann::json::object());

void write_convergence_table(const std::vector<ConvergenceMetrics>& rows, const std::filesystem::path& path,
                             const nlohmann::json& metadata = nlohmann::json::object());

nlohmann::json to_json(const ComparisonMetrics& m);

} // namespace cosserat
