#include "entropy_gap/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "entropy_gap/errors.hpp"

namespace entropy_gap::io {

json state_to_json(const MultipartiteState& state) {
    json j;
    j["dims"] = state.dims();
    j["labels"] = state.labels();
    j["kind"] = to_string(state.kind());
    json entries = json::array();
    const auto& m = state.matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            entries.push_back({m(r, c).real(), m(r, c).imag()});
    j["matrix"] = std::move(entries);
    return j;
}

MultipartiteState state_from_json(const json& j) {
    try {
        if (!j.is_object()) throw ParseError("state: expected a JSON object");
        const auto dims = j.at("dims").get<Dims>();
        if (dims.empty()) throw ParseError("state: empty dims");
        for (std::size_t d : dims)
            if (d == 0) throw ParseError("state: zero dimension");
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        const StateKind kind =
            j.contains("kind") ? state_kind_from_string(j.at("kind").get<std::string>())
                               : StateKind::State;
        const auto& entries = j.at("matrix");
        if (!entries.is_array()) throw ParseError("state: matrix must be an array");
        const auto count = entries.size();
        const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(count))));
        if (n == 0 || n * n != count) throw ParseError("state: matrix is not square");
        if (n != total_dim(dims)) throw ParseError("state: matrix size inconsistent with dims");
        ComplexMatrix m(n, n);
        for (std::size_t k = 0; k < count; ++k) {
            const auto& e = entries[k];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw ParseError("state: entries must be [re, im] number pairs");
            m(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) =
                Complex(e[0].get<double>(), e[1].get<double>());
        }
        if (!all_finite(m)) throw ParseError("state: non-finite entry");
        if (!labels.empty() && labels.size() != dims.size())
            throw ParseError("state: labels and dims differ in length");
        return MultipartiteState(std::move(m), dims, std::move(labels), kind);
    } catch (const json::exception& e) {
        throw ParseError(std::string("state: ") + e.what());
    }
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

void save_state(const MultipartiteState& state, const std::filesystem::path& path) {
    write_text(path, dump(state_to_json(state)));
}

MultipartiteState load_state(const std::filesystem::path& path) {
    const std::string text = read_text(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return state_from_json(j);
}

json number_to_json(double x) {
    if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
    return x;
}

json to_json(const ExtendedReal& x) { return number_to_json(x.as_double()); }

json to_json(const ChainVerdict& v) {
    json links = json::array();
    for (const auto& l : v.links) links.push_back({{"label", l.label}, {"value", to_json(l.value)}});
    json gaps = json::array();
    for (double g : v.gaps) gaps.push_back(number_to_json(g));
    json conditions = json::array();
    for (const auto& c : v.conditions)
        conditions.push_back({{"label", c.label},
                              {"lhs", number_to_json(c.lhs)},
                              {"rhs", number_to_json(c.rhs)},
                              {"tol", c.tol},
                              {"pass", c.pass}});
    return {{"name", v.name},     {"links", links}, {"gaps", gaps},
            {"conditions", conditions}, {"pass", v.pass}, {"tol", v.tol},
            {"metadata", v.metadata}};
}

json to_json(const IdentityCheck& c) {
    return {{"name", c.name},
            {"lhs", to_json(c.lhs)},
            {"rhs", to_json(c.rhs)},
            {"residual", number_to_json(c.residual)},
            {"tol", c.tol},
            {"pass", c.pass}};
}

json to_json(const MarkovReport& r) {
    json j = {{"trace_M", r.trace_m},
              {"cmi_rho", r.cmi_rho},
              {"cmi_M", r.cmi_m ? json(*r.cmi_m) : json(nullptr)},
              {"log_residual", r.log_residual},
              {"trace_distance_M_rho", r.m_vs_rho_trace_distance},
              {"reconstruction_residuals",
               {{"c-conditioned", r.residual_c_conditioned},
                {"literal-i", r.residual_literal_i},
                {"literal-ii", r.residual_literal_ii}}},
              {"verdict", to_string(r.verdict)},
              {"tol", r.tol},
              {"notes", r.notes}};
    return j;
}

json to_json(const ScanSummary& s) {
    json hist = json::array();
    for (const auto& [edge, count] : s.histogram) hist.push_back({edge, count});
    json top = json::array();
    for (std::size_t k = 0; k < s.top_states.size(); ++k) {
        json st = state_to_json(s.top_states[k]);
        st["sample_index"] = s.top_indices[k];
        st["trace_M"] = s.traces[s.top_indices[k]];
        top.push_back(std::move(st));
    }
    return {{"dims", s.dims},   {"n_samples", s.n_samples}, {"seed", s.seed},
            {"ensemble", to_string(s.ensemble)},
            {"min", s.min},     {"max", s.max},             {"mean", s.mean},
            {"histogram", hist}, {"top_states", top}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string format_number(double x) {
    if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace entropy_gap::io
