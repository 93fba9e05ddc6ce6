// json_io.cpp — JSON (de)serialization for the library's value types

#include "cocycle/json_io.hpp"

#include <fstream>

namespace cocycle::io {

namespace {

json real_part_rows(const ComplexMatrix& m, bool imag) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j)
            row.push_back(imag ? m(i, j).imag() : m(i, j).real());
        rows.push_back(std::move(row));
    }
    return rows;
}

void require_field(const json& j, const char* field, const char* what) {
    if (!j.contains(field))
        throw std::invalid_argument(std::string(what) + ": missing field \"" + field + "\"");
}

void fill_part(ComplexMatrix& m, const json& rows, bool imag, const char* what) {
    if (!rows.is_array() || static_cast<Index>(rows.size()) != m.rows())
        throw std::invalid_argument(std::string(what) + ": entry array has wrong row count");
    for (Index i = 0; i < m.rows(); ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != m.cols())
            throw std::invalid_argument(std::string(what) + ": entry array has wrong column count");
        for (Index j = 0; j < m.cols(); ++j) {
            const json& cell = row[static_cast<std::size_t>(j)];
            if (!cell.is_number())
                throw std::invalid_argument(std::string(what) + ": matrix entries must be numbers");
            const double value = cell.get<double>();
            if (imag)
                m(i, j) = Complex(m(i, j).real(), value);
            else
                m(i, j) = Complex(value, m(i, j).imag());
        }
    }
}

} // namespace

json matrix_json(const ComplexMatrix& m) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["re"] = real_part_rows(m, false);
    j["im"] = real_part_rows(m, true);
    return j;
}

ComplexMatrix matrix_from_json(const json& j) {
    require_field(j, "rows", "matrix");
    require_field(j, "cols", "matrix");
    require_field(j, "re", "matrix");
    const Index rows = j["rows"].get<Index>();
    const Index cols = j["cols"].get<Index>();
    if (rows < 0 || cols < 0) throw std::invalid_argument("matrix: negative dimensions");
    ComplexMatrix m = ComplexMatrix::Zero(rows, cols);
    fill_part(m, j["re"], false, "matrix");
    if (j.contains("im")) fill_part(m, j["im"], true, "matrix");
    if (!m.allFinite()) throw std::invalid_argument("matrix: entries must be finite");
    return m;
}

json partition_json(const BlockPartition& p) {
    json j;
    j["n"] = p.n;
    json blocks = json::array();
    for (const auto& block : p.blocks) blocks.push_back(block);
    j["blocks"] = std::move(blocks);
    return j;
}

BlockPartition partition_from_json(const json& j) {
    require_field(j, "n", "partition");
    require_field(j, "blocks", "partition");
    BlockPartition p;
    p.n = j["n"].get<Index>();
    for (const auto& block : j["blocks"]) p.blocks.push_back(block.get<std::vector<Index>>());
    p.validate();
    return p;
}

json generator_json(const gen::BlockGenerator& f) {
    json j;
    j["n"] = f.n;
    j["d"] = f.d;
    j["A"] = matrix_json(f.A);
    j["B"] = matrix_json(f.B);
    j["C"] = matrix_json(f.C);
    j["D"] = matrix_json(f.D);
    return j;
}

gen::BlockGenerator generator_from_json(const json& j) {
    for (const char* field : {"n", "d", "A", "B", "C", "D"}) require_field(j, field, "generator");
    gen::BlockGenerator f;
    f.n = j["n"].get<Index>();
    f.d = j["d"].get<Index>();
    f.A = matrix_from_json(j["A"]);
    f.B = matrix_from_json(j["B"]);
    f.C = matrix_from_json(j["C"]);
    f.D = matrix_from_json(j["D"]);
    f.validate();
    return f;
}

json local_pair_json(const gen::LocalProjectionPair& p) {
    json j;
    j["P"] = matrix_json(p.projection);
    j["u"] = matrix_json(p.vector);
    return j;
}

gen::LocalProjectionPair local_pair_from_json(const json& j) {
    require_field(j, "P", "local pair");
    require_field(j, "u", "local pair");
    gen::LocalProjectionPair p;
    p.projection = matrix_from_json(j["P"]);
    const ComplexMatrix u = matrix_from_json(j["u"]);
    if (u.cols() != 1)
        throw std::invalid_argument("local pair: u must be a column matrix (cols == 1)");
    p.vector = u.col(0);
    return p;
}

json hom_json(const endo::NormalHom& h) {
    json j;
    j["m"] = h.m;
    j["j"] = h.j;
    j["n"] = h.n;
    j["V"] = matrix_json(h.V);
    return j;
}

endo::NormalHom hom_from_json(const json& j) {
    for (const char* field : {"m", "j", "n", "V"}) require_field(j, field, "hom");
    endo::NormalHom h;
    h.m = j["m"].get<Index>();
    h.j = j["j"].get<Index>();
    h.n = j["n"].get<Index>();
    h.V = matrix_from_json(j["V"]);
    return h;
}

SimConfig sim_config_from_json(const json& j) {
    require_field(j, "generator", "sim config");
    SimConfig cfg;
    cfg.generator = generator_from_json(j["generator"]);
    if (j.contains("tau")) cfg.tau = j["tau"].get<double>();
    if (j.contains("slices")) cfg.slices = j["slices"].get<Index>();
    if (j.contains("tau_start")) cfg.tau_start = j["tau_start"].get<double>();
    if (j.contains("halvings")) cfg.halvings = j["halvings"].get<int>();
    if (j.contains("subordinate")) cfg.subordinate = generator_from_json(j["subordinate"]);
    if (j.contains("probes")) {
        const json& probes = j["probes"];
        if (probes.contains("seed")) cfg.seed = probes["seed"].get<std::uint64_t>();
        if (probes.contains("count")) cfg.random_count = probes["count"].get<int>();
        if (probes.contains("exponential")) {
            for (const auto& fn : probes["exponential"]) {
                std::vector<ComplexVector> f;
                for (const auto& slice : fn) {
                    ComplexVector v(static_cast<Index>(slice.size()));
                    for (Index a = 0; a < v.size(); ++a)
                        v(a) = slice[static_cast<std::size_t>(a)].get<double>();
                    f.push_back(std::move(v));
                }
                cfg.exponential.push_back(std::move(f));
            }
        }
    }
    return cfg;
}

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in.good())
        throw std::invalid_argument("cannot open file: " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path.string() + ": " + e.what());
    }
}

} // namespace cocycle::io
