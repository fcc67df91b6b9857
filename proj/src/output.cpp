#include "cosserat/output.hpp"

#include <cstdio>
#include <stdexcept>

namespace cosserat {

namespace {

void append(std::string& line, double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    if (!line.empty())
        line += ',';
    line += buf;
}

void append(std::string& line, std::size_t v)
{
    if (!line.empty())
        line += ',';
    line += std::to_string(v);
}

std::string joined(const std::vector<std::string>& cols)
{
    std::string s;
    for (const std::string& c : cols)
        s += (s.empty() ? "" : ",") + c;
    return s;
}

} // namespace

const std::vector<std::string>& timeseries_columns()
{
    static const std::vector<std::string> cols{"k",     "t",     "H_total", "T_trans", "T_rot",
                                               "U_lin", "U_ang", "length",  "e_min",   "e_max",
                                               "vol_dev_max", "px", "py",    "pz",      "ortho_defect"};
    return cols;
}

const std::vector<std::string>& snapshot_columns()
{
    static const std::vector<std::string> cols{"k",   "t",   "node", "x",   "y",   "z",   "r00", "r01",
                                               "r02", "r10", "r11",  "r12", "r20", "r21", "r22"};
    return cols;
}

const std::vector<std::string>& convergence_columns()
{
    static const std::vector<std::string> cols{"elements", "h", "eps_pos", "eps_rot", "nested"};
    return cols;
}

std::string format_record(const DiagnosticsRecord& r)
{
    std::string line;
    append(line, r.k);
    append(line, r.t);
    append(line, r.energy.total());
    append(line, r.energy.translational);
    append(line, r.energy.rotational);
    append(line, r.energy.linear_strain);
    append(line, r.energy.angular_strain);
    append(line, r.length);
    append(line, r.e_min);
    append(line, r.e_max);
    append(line, r.volume_deviation_max);
    append(line, r.momentum.x());
    append(line, r.momentum.y());
    append(line, r.momentum.z());
    append(line, r.ortho_defect);
    return line;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv)
{
    std::filesystem::path p = csv;
    return p.replace_extension(".meta.json");
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc)
{
    if (!out_)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    row(joined(columns));
}

void CsvWriter::row(const std::string& line)
{
    out_ << line << '\n';
    if (!out_)
        throw std::runtime_error("write to '" + path_.string() + "' failed");
}

void CsvWriter::close()
{
    out_.close();
    if (out_.fail())
        throw std::runtime_error("closing '" + path_.string() + "' failed");
}

void SnapshotWriter::write(const RodState& s)
{
    const double t = static_cast<double>(s.step) * s.h;
    for (std::size_t q = 0; q < s.x.size(); ++q) {
        std::string line;
        append(line, s.step);
        append(line, t);
        append(line, q);
        for (int i = 0; i < 3; ++i)
            append(line, s.x[q][i]);
        const Mat3& m = s.R[q].matrix();
        for (int i = 0; i < 3; ++i)
            for (int c = 0; c < 3; ++c)
                append(line, m(i, c));
        csv_.row(line);
    }
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << j.dump(2) << '\n';
    if (!out)
        throw std::runtime_error("write to '" + path.string() + "' failed");
}

void write_timeseries(const std::vector<DiagnosticsRecord>& records, const std::filesystem::path& path,
                      const nlohmann::json& metadata)
{
    TimeseriesWriter w(path);
    for (const DiagnosticsRecord& r : records)
        w.write(r);
    w.close();
    nlohmann::json meta = metadata;
    meta["columns"] = timeseries_columns();
    meta["rows"] = records.size();
    write_json(sidecar_path(path), meta);
}

void write_convergence_table(const std::vector<ConvergenceMetrics>& rows, const std::filesystem::path& path,
                             const nlohmann::json& metadata)
{
    CsvWriter w(path, convergence_columns());
    bool nested = true;
    for (const ConvergenceMetrics& m : rows) {
        std::string line;
        append(line, m.elements);
        append(line, m.h);
        append(line, m.eps_pos);
        append(line, m.eps_rot);
        line += m.nested ? ",1" : ",0";
        w.row(line);
        nested = nested && m.nested;
    }
    w.close();
    nlohmann::json meta = metadata;
    meta["columns"] = convergence_columns();
    meta["rows"] = rows.size();
    meta["node_matching"] = nested ? "exact common nodes" : "nearest reference node (grids do not nest)";
    write_json(sidecar_path(path), meta);
}

nlohmann::json to_json(const ComparisonMetrics& m)
{
    return {{"delta_H_max", m.energy}, {"delta_L_max", m.length}, {"delta_V_max", m.volume}};
}

} // namespace cosserat
