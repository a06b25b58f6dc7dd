#include "framemul/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace framemul {

namespace {

double number_from(const json& j, const char* context) {
    if (!j.is_number()) throw ValidationError(std::string(context) + ": expected a number");
    return j.get<double>();
}

std::string format_double(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

} // namespace

json to_json(const cx& z) { return json::array({z.real(), z.imag()}); }

json to_json(const CVector& v) {
    json arr = json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) arr.push_back(to_json(v[i]));
    return arr;
}

json to_json(const LinOperator& o) {
    json rows = json::array();
    for (std::size_t i = 0; i < o.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < o.cols(); ++j) row.push_back(to_json(o(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"rows", o.rows()}, {"cols", o.cols()}, {"entries", std::move(rows)}};
}

json to_json(const VectorFamily& f) {
    json vectors = json::array();
    for (std::size_t k = 0; k < f.size(); ++k) vectors.push_back(to_json(f[k]));
    json j{{"dim", f.dim()}, {"vectors", std::move(vectors)}};
    if (!f.labels().empty()) j["labels"] = f.labels();
    return j;
}

json to_json(const Symbol& m) {
    json entries = json::array();
    for (std::size_t k = 0; k < m.size(); ++k) entries.push_back(to_json(m[k]));
    return json{{"entries", std::move(entries)}};
}

json to_json(const BoundCertificate& c) {
    return json{{"name", c.name},
                {"claimed", c.claimed},
                {"measured", c.measured},
                {"margin", c.margin},
                {"holds", c.holds}};
}

json to_json(const FrameReport& r) {
    json j{{"is_bessel", r.is_bessel},
           {"bessel_bound_opt", r.bessel_bound_opt},
           {"is_frame", r.is_frame}};
    if (r.lower_bound_opt) j["lower_bound_opt"] = *r.lower_bound_opt;
    j["is_riesz_basis"] = r.is_riesz_basis;
    j["is_riesz_sequence"] = r.is_riesz_sequence;
    if (r.riesz_bounds) j["riesz_bounds"] = json::array({r.riesz_bounds->first, r.riesz_bounds->second});
    if (r.dual) j["dual"] = to_json(*r.dual);
    return j;
}

json to_json(const ConvergenceTable& t) {
    json rows = json::array();
    for (const ConvergenceRow& r : t.rows) {
        rows.push_back(json{{"l", r.index},
                            {"epsilon", r.epsilon},
                            {"measured", r.measured},
                            {"bound", r.bound},
                            {"margin", r.margin}});
    }
    return json{{"name", t.name}, {"norm", t.norm}, {"rows", std::move(rows)}};
}

json to_json(const SimilarityReport& s) {
    return json{{"d_sup", s.d_sup}, {"d_l2", s.d_l2}, {"d_l1", s.d_l1}, {"d_bessel", s.d_bessel}};
}

cx cx_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ValidationError("complex value: expected an [re, im] pair");
    return {number_from(j[0], "complex value"), number_from(j[1], "complex value")};
}

CVector cvector_from_json(const json& j) {
    if (!j.is_array()) throw ValidationError("vector: expected an array of [re, im] pairs");
    std::vector<cx> entries;
    entries.reserve(j.size());
    for (const json& e : j) entries.push_back(cx_from_json(e));
    return CVector(std::move(entries));
}

LinOperator operator_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw ValidationError("operator: expected {\"rows\", \"cols\", \"entries\"}");
    const auto rows = j["rows"].get<std::size_t>();
    const auto cols = j["cols"].get<std::size_t>();
    const json& entries = j["entries"];
    if (!entries.is_array() || entries.size() != rows)
        throw ValidationError("operator: row count does not match \"rows\"");
    std::vector<cx> flat;
    flat.reserve(rows * cols);
    for (const json& row : entries) {
        if (!row.is_array() || row.size() != cols)
            throw ValidationError("operator: column count does not match \"cols\"");
        for (const json& e : row) flat.push_back(cx_from_json(e));
    }
    return LinOperator(rows, cols, std::move(flat));
}

VectorFamily family_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("vectors"))
        throw ValidationError("family: expected {\"dim\", \"vectors\", \"labels\"?}");
    const auto dim = j["dim"].get<std::size_t>();
    const json& vectors = j["vectors"];
    if (!vectors.is_array()) throw ValidationError("family: \"vectors\" must be an array");
    std::vector<CVector> members;
    members.reserve(vectors.size());
    for (const json& v : vectors) members.push_back(cvector_from_json(v));
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    return VectorFamily(dim, std::move(members), std::move(labels));
}

Symbol symbol_from_json(const json& j) {
    if (!j.is_object() || !j.contains("entries"))
        throw ValidationError("symbol: expected {\"entries\"}");
    const json& entries = j["entries"];
    if (!entries.is_array()) throw ValidationError("symbol: \"entries\" must be an array");
    std::vector<cx> values;
    values.reserve(entries.size());
    for (const json& e : entries) values.push_back(cx_from_json(e));
    return Symbol(std::move(values));
}

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        // e.what() carries the line/column position.
        throw ValidationError(path.string() + ": " + e.what());
    }
}

VectorFamily load_family(const std::filesystem::path& path) {
    try {
        return family_from_json(load_json(path));
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

Symbol load_symbol(const std::filesystem::path& path) {
    try {
        return symbol_from_json(load_json(path));
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

LinOperator load_operator(const std::filesystem::path& path) {
    try {
        return operator_from_json(load_json(path));
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

void save_json_atomic(const std::filesystem::path& path, const json& j) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw ValidationError("cannot write " + tmp.string());
        out << j.dump(2) << "\n";
        if (!out) throw ValidationError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string render_text(const json& report) {
    std::ostringstream os;
    if (report.contains("command")) os << "command: " << report["command"].get<std::string>() << "\n";
    for (const auto& [key, value] : report.items()) {
        if (key == "command" || key == "certificates" || key == "tables") continue;
        os << key << ": " << value.dump() << "\n";
    }
    if (report.contains("certificates")) {
        os << "certificates:\n";
        os << "  " << std::left << std::setw(32) << "name" << std::right << std::setw(16)
           << "claimed" << std::setw(16) << "measured" << std::setw(16) << "margin"
           << std::setw(8) << "holds" << "\n";
        for (const json& c : report["certificates"]) {
            os << "  " << std::left << std::setw(32) << c["name"].get<std::string>() << std::right
               << std::setw(16) << format_double(c["claimed"].get<double>()) << std::setw(16)
               << format_double(c["measured"].get<double>()) << std::setw(16)
               << format_double(c["margin"].get<double>()) << std::setw(8)
               << (c["holds"].get<bool>() ? "yes" : "NO") << "\n";
        }
    }
    if (report.contains("tables")) {
        for (const json& t : report["tables"]) {
            os << "table " << t["name"].get<std::string>() << " (" << t["norm"].get<std::string>()
               << " norm):\n";
            os << "  " << std::right << std::setw(6) << "l" << std::setw(16) << "epsilon"
               << std::setw(16) << "measured" << std::setw(16) << "bound" << std::setw(16)
               << "margin" << "\n";
            for (const json& r : t["rows"]) {
                os << "  " << std::right << std::setw(6) << r["l"].get<std::size_t>()
                   << std::setw(16) << format_double(r["epsilon"].get<double>()) << std::setw(16)
                   << format_double(r["measured"].get<double>()) << std::setw(16)
                   << format_double(r["bound"].get<double>()) << std::setw(16)
                   << format_double(r["margin"].get<double>()) << "\n";
            }
        }
    }
    return os.str();
}

} // namespace framemul
