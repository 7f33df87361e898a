#include "orbitcf/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "orbitcf/errors.hpp"

namespace orbitcf {

namespace {

void put_number(std::string& out, double x) {
    if (!std::isfinite(x)) throw NumericalError("serialize_record: non-finite value");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
}

template <typename Fn>
void put_list(std::string& out, std::size_t n, Fn&& item) {
    out += '[';
    for (std::size_t i = 0; i < n; ++i) {
        if (i) out += ',';
        item(i);
    }
    out += ']';
}

void put_real_matrix(std::string& out, const arma::mat& a) {
    put_list(out, a.n_rows, [&](std::size_t i) {
        put_list(out, a.n_cols, [&](std::size_t j) { put_number(out, a(i, j)); });
    });
}

template <typename Part>
void put_cx_matrix(std::string& out, const arma::cx_mat& a, Part part) {
    put_list(out, a.n_rows, [&](std::size_t i) {
        put_list(out, a.n_cols, [&](std::size_t j) { put_number(out, part(a(i, j))); });
    });
}

void key(std::string& out, const char* name) {
    out += '"';
    out += name;
    out += "\":";
}

const nlohmann::json& field(const nlohmann::json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw InputError(std::string("parse_record: missing key ") + name);
    return *it;
}

template <typename T>
T scalar(const nlohmann::json& j, const char* name) {
    try {
        return field(j, name).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InputError(std::string("parse_record: malformed key ") + name);
    }
}

arma::mat real_matrix(const nlohmann::json& j, const char* name) {
    try {
        const auto rows = field(j, name).get<std::vector<std::vector<double>>>();
        arma::mat a(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != a.n_cols) throw InputError(std::string("parse_record: ragged ") + name);
            for (std::size_t k = 0; k < rows[i].size(); ++k) a(i, k) = rows[i][k];
        }
        return a;
    } catch (const nlohmann::json::exception&) {
        throw InputError(std::string("parse_record: malformed key ") + name);
    }
}

std::vector<arma::mat> real_cube(const nlohmann::json& j, const char* name) {
    const auto& arr = field(j, name);
    if (!arr.is_array()) throw InputError(std::string("parse_record: malformed key ") + name);
    std::vector<arma::mat> out;
    for (const auto& item : arr) out.push_back(real_matrix(nlohmann::json{{name, item}}, name));
    return out;
}

}  // namespace

GnnRecord make_record(const NetworkRealization& net, const EstimationStatistics& stats, const SystemConfig& cfg,
                      int drop_id, std::uint64_t seed) {
    GnnRecord r;
    r.drop_id = drop_id;
    r.seed = seed;
    r.beta = net.beta_ground;
    r.gbar = net.g_bar_sat;
    r.r = net.R_sat;
    r.phi = stats.phi;
    r.gamma = stats.gamma;
    r.c = stats.c;
    r.p_max = arma::vec(cfg.p_max_vector());
    r.sigma2_ap = stats.sigma2_ap;
    r.sigma2_sat = stats.sigma2_sat;
    r.p_pilot = cfg.p_pilot_w;
    r.tau_p = net.tau_p;
    r.tau_c = cfg.tau_c;
    r.b_hz = cfg.b_hz;
    r.pilot_of_user = net.pilot_of_user;
    return r;
}

std::string serialize_record(const GnnRecord& rec) {
    std::string out;
    out.reserve(64 * 1024);
    out += '{';
    key(out, "drop_id");
    out += std::to_string(rec.drop_id);
    out += ',';
    key(out, "seed");
    out += std::to_string(rec.seed);
    out += ',';
    key(out, "beta");
    put_real_matrix(out, rec.beta);
    out += ',';

    const auto gbar_part = [&](const char* name, auto part) {
        key(out, name);
        put_list(out, rec.gbar.size(), [&](std::size_t k) {
            put_list(out, rec.gbar[k].n_elem, [&](std::size_t i) { put_number(out, part(rec.gbar[k](i))); });
        });
        out += ',';
    };
    const auto re = [](cx z) { return z.real(); };
    const auto im = [](cx z) { return z.imag(); };
    gbar_part("gbar_re", re);
    gbar_part("gbar_im", im);

    const auto cube = [&](const char* name, const std::vector<arma::cx_mat>& mats, auto part) {
        key(out, name);
        put_list(out, mats.size(), [&](std::size_t k) { put_cx_matrix(out, mats[k], part); });
        out += ',';
    };
    cube("R_re", rec.r, re);
    cube("R_im", rec.r, im);
    cube("phi_re", rec.phi, re);
    cube("phi_im", rec.phi, im);

    key(out, "gamma");
    put_real_matrix(out, rec.gamma);
    out += ',';
    key(out, "c");
    put_real_matrix(out, rec.c);
    out += ',';
    key(out, "p_max");
    put_list(out, rec.p_max.n_elem, [&](std::size_t k) { put_number(out, rec.p_max(k)); });
    out += ',';
    key(out, "sigma2_ap");
    put_number(out, rec.sigma2_ap);
    out += ',';
    key(out, "sigma2_sat");
    put_number(out, rec.sigma2_sat);
    out += ',';
    key(out, "p_pilot");
    put_number(out, rec.p_pilot);
    out += ',';
    key(out, "tau_p");
    out += std::to_string(rec.tau_p);
    out += ',';
    key(out, "tau_c");
    out += std::to_string(rec.tau_c);
    out += ',';
    key(out, "b_hz");
    put_number(out, rec.b_hz);
    out += ',';
    key(out, "pilot_of_user");
    put_list(out, rec.pilot_of_user.size(), [&](std::size_t k) { out += std::to_string(rec.pilot_of_user[k]); });
    out += '}';
    return out;
}

GnnRecord parse_record(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("parse_record: invalid JSON: ") + e.what());
    }
    GnnRecord r;
    r.drop_id = scalar<int>(j, "drop_id");
    r.seed = scalar<std::uint64_t>(j, "seed");
    r.beta = real_matrix(j, "beta");
    const arma::mat g_re = real_matrix(j, "gbar_re");
    const arma::mat g_im = real_matrix(j, "gbar_im");
    if (g_re.n_rows != g_im.n_rows || g_re.n_cols != g_im.n_cols)
        throw InputError("parse_record: gbar_re and gbar_im differ in shape");
    for (arma::uword k = 0; k < g_re.n_rows; ++k)
        r.gbar.emplace_back(arma::cx_vec(g_re.row(k).t(), g_im.row(k).t()));

    const auto complex_cube = [&](const char* re_name, const char* im_name) {
        const auto re = real_cube(j, re_name);
        const auto im = real_cube(j, im_name);
        if (re.size() != im.size()) throw InputError(std::string("parse_record: ") + re_name + " and " + im_name + " differ");
        std::vector<arma::cx_mat> out;
        for (std::size_t i = 0; i < re.size(); ++i) {
            if (re[i].n_rows != im[i].n_rows || re[i].n_cols != im[i].n_cols)
                throw InputError(std::string("parse_record: ") + re_name + " and " + im_name + " differ");
            out.emplace_back(re[i], im[i]);
        }
        return out;
    };
    r.r = complex_cube("R_re", "R_im");
    r.phi = complex_cube("phi_re", "phi_im");
    r.gamma = real_matrix(j, "gamma");
    r.c = real_matrix(j, "c");
    r.p_max = arma::vec(scalar<std::vector<double>>(j, "p_max"));
    r.sigma2_ap = scalar<double>(j, "sigma2_ap");
    r.sigma2_sat = scalar<double>(j, "sigma2_sat");
    r.p_pilot = scalar<double>(j, "p_pilot");
    r.tau_p = scalar<int>(j, "tau_p");
    r.tau_c = scalar<int>(j, "tau_c");
    r.b_hz = scalar<double>(j, "b_hz");
    r.pilot_of_user = scalar<std::vector<int>>(j, "pilot_of_user");

    const arma::uword k = r.beta.n_cols;
    if (r.gbar.size() != k || r.r.size() != k || r.p_max.n_elem != k || r.pilot_of_user.size() != k ||
        r.gamma.n_cols != k || r.c.n_cols != k)
        throw InputError("parse_record: per-user arrays disagree on K");
    if (r.phi.size() != static_cast<std::size_t>(r.tau_p)) throw InputError("parse_record: phi must have tau_p entries");
    for (int p : r.pilot_of_user)
        if (p < 1 || p > r.tau_p) throw InputError("parse_record: pilot_of_user entry out of range");
    return r;
}

std::pair<NetworkRealization, EstimationStatistics> record_to_inputs(const GnnRecord& rec) {
    NetworkRealization net;
    net.beta_ground = rec.beta;
    net.g_bar_sat = rec.gbar;
    net.R_sat = rec.r;
    net.tau_p = rec.tau_p;
    net.pilot_of_user = rec.pilot_of_user;
    const std::size_t k = rec.pilot_of_user.size();
    net.copilot_sets.assign(k, {});
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            if (rec.pilot_of_user[a] == rec.pilot_of_user[b]) net.copilot_sets[a].push_back(static_cast<int>(b));

    EstimationStatistics st;
    st.c = rec.c;
    st.gamma = rec.gamma;
    st.phi = rec.phi;
    st.sigma2_ap = rec.sigma2_ap;
    st.sigma2_sat = rec.sigma2_sat;
    st.pilot_energy = rec.p_pilot * rec.tau_p;
    complete_statistics(st, net);
    return {std::move(net), std::move(st)};
}

}  // namespace orbitcf
