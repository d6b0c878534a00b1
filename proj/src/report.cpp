#include "sovlab/report.hpp"

#include <fstream>

#include "json.hpp"

namespace sovlab {

using nlohmann::json;

std::string SpectralReport::to_json_text(bool include_timings) const {
    json j;
    j["schema_version"] = schema_version;
    j["seed"] = seed;
    j["precision"] = precision;
    j["all_ok"] = all_ok;
    j["config"] = json::parse(config_json);
    json arr = json::array();
    for (const auto& s : suites) {
        json js;
        js["suite"] = s.suite;
        js["ok"] = s.ok;
        if (include_timings) js["wall_ms"] = s.wall_ms;
        json checks = json::array();
        for (const auto& c : s.checks) {
            json jc;
            jc["name"] = c.name;
            jc["anchor"] = c.anchor;
            jc["status"] = c.status();
            jc["worst_residual"] = c.worst_residual;
            if (!c.detail.empty()) jc["detail"] = c.detail;
            if (include_timings) jc["wall_ms"] = c.wall_ms;
            checks.push_back(std::move(jc));
        }
        js["checks"] = std::move(checks);
        arr.push_back(std::move(js));
    }
    j["suites"] = std::move(arr);
    return j.dump(2) + "\n";
}

void SpectralReport::write_file(const std::string& path, bool include_timings) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("report: cannot open " + path + " for writing");
    out << to_json_text(include_timings);
}

namespace {

json pattern_rows_json(const GTPattern& p) {
    json rows = json::array();
    for (int a = p.n; a >= 1; --a) {  // top row first
        json row = json::array();
        for (int j = 1; j <= a; ++j) row.push_back(p.node(a, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string complex_str(const Complex& z, unsigned digits) {
    Real re = z.real(), im = z.imag();
    return "(" + re.str(digits, std::ios_base::scientific) + "," + im.str(digits, std::ios_base::scientific) + ")";
}

}  // namespace

std::string sov_basis_json(const Chain& chain, const SovBasis& basis) {
    const ChainSpec& s = chain.spec();
    json j;
    j["schema_version"] = 1;
    j["dimension"] = chain.dim();
    json arr = json::array();
    for (std::size_t g = 0; g < basis.covectors.size(); ++g) {
        json e;
        e["index"] = g;
        PatternTuple t = chain.tuple_at(g);
        json pats = json::array();
        for (const auto& p : t) pats.push_back(pattern_rows_json(p));
        e["patterns"] = std::move(pats);
        json coords = json::array();
        for (int alpha = 1; alpha <= s.L; ++alpha)
            for (int k = 1; k <= s.n - 1; ++k)
                for (int jj = 1; jj <= k; ++jj) {
                    json cc;
                    cc["site"] = alpha;
                    cc["k"] = k;
                    cc["j"] = jj;
                    cc["x"] = rat_to_string(sep_coordinate(s, t[(std::size_t)alpha - 1], alpha, k, jj));
                    coords.push_back(std::move(cc));
                }
        e["coordinates"] = std::move(coords);
        json comp = json::array();
        for (const auto& x : basis.covectors[g]) comp.push_back(rat_to_string(x));
        e["covector"] = std::move(comp);
        if (!basis.rescaled.empty()) {
            json rcomp = json::array();
            for (const auto& x : basis.rescaled[g]) rcomp.push_back(rat_to_string(x));
            e["rescaled_covector"] = std::move(rcomp);
        }
        arr.push_back(std::move(e));
    }
    j["basis"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::string bethe_states_json(const BetheLab& lab) {
    const ChainSpec& s = lab.spec();
    unsigned digits = lab.policy().digits;
    json j;
    j["schema_version"] = 1;
    j["precision_digits"] = digits;
    json arr = json::array();
    for (const auto& st : lab.states()) {
        json e;
        e["index"] = st.index;
        e["diag_residual"] = st.diag_residual.str(6, std::ios_base::scientific);
        json taus = json::array();
        for (std::size_t a = 0; a < st.tau.size(); ++a) {
            json tt;
            tt["order"] = a + 1;
            json coeffs = json::array();
            for (const auto& cc : st.tau[a].coeffs()) coeffs.push_back(complex_str(cc, digits));
            tt["coefficients_ascending"] = std::move(coeffs);
            taus.push_back(std::move(tt));
        }
        e["transfer_eigenvalues"] = std::move(taus);
        json qs = json::array();
        for (std::size_t i = 0; i < st.qhat.size(); ++i) {
            json q;
            q["twist_index"] = i + 1;
            q["z"] = rat_to_string(s.z[i]);
            q["degree"] = st.qhat[i].degree();
            json coeffs = json::array();
            for (const auto& cc : st.qhat[i].p.coeffs()) coeffs.push_back(complex_str(cc, digits));
            q["coefficients_ascending"] = std::move(coeffs);
            qs.push_back(std::move(q));
        }
        e["baxter_solutions"] = std::move(qs);
        arr.push_back(std::move(e));
    }
    j["states"] = std::move(arr);
    return j.dump(2) + "\n";
}

}  // namespace sovlab
