#include "towtrack/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace towtrack {

namespace {

using nlohmann::json;

double num(const json& j, const std::string& ctx, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number())
        throw ScenarioError(ctx + "." + key + ": expected a number");
    return v.get<double>();
}

void reject_unknown(const json& j, const std::string& ctx,
                    const std::set<std::string>& known) {
    for (const auto& [key, _] : j.items())
        if (!known.count(key))
            throw ScenarioError(ctx + ": unknown key '" + key + "'");
}

Mode parse_mode(const std::string& s, const std::string& ctx) {
    if (s == "reference") return Mode::ReferenceOnly;
    if (s == "qp") return Mode::QpFiltered;
    throw ScenarioError(ctx + ": mode must be 'reference' or 'qp', got '" + s + "'");
}

}  // namespace

ScenarioConfig parse_scenario(std::istream& in, const std::string& origin) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ScenarioError(origin + ": " + e.what());
    }
    if (!j.is_object()) throw ScenarioError(origin + ": expected a JSON object");

    ScenarioConfig cfg = towing_circle_scenario();  // field-level fallbacks

    reject_unknown(j, origin,
                   {"plant", "gains", "cbf", "mode", "dt", "duration",
                    "filter_mu", "initial_state", "trajectory"});

    if (j.contains("plant")) {
        const json& p = j.at("plant");
        const std::string ctx = origin + ".plant";
        reject_unknown(p, ctx,
                       {"m11", "m22", "m33", "d_u", "d_v", "d_r", "d_u2", "d_u3",
                        "d_v2", "d_v3", "d_r2", "d_r3", "b_u", "b_r", "eps_r"});
        VesselParams& vp = cfg.params;
        vp.m11 = num(p, ctx, "m11", vp.m11);
        vp.m22 = num(p, ctx, "m22", vp.m22);
        vp.m33 = num(p, ctx, "m33", vp.m33);
        vp.d_u = num(p, ctx, "d_u", vp.d_u);
        vp.d_v = num(p, ctx, "d_v", vp.d_v);
        vp.d_r = num(p, ctx, "d_r", vp.d_r);
        vp.d_u2 = num(p, ctx, "d_u2", vp.d_u2);
        vp.d_u3 = num(p, ctx, "d_u3", vp.d_u3);
        vp.d_v2 = num(p, ctx, "d_v2", vp.d_v2);
        vp.d_v3 = num(p, ctx, "d_v3", vp.d_v3);
        vp.d_r2 = num(p, ctx, "d_r2", vp.d_r2);
        vp.d_r3 = num(p, ctx, "d_r3", vp.d_r3);
        vp.b_u = num(p, ctx, "b_u", vp.b_u);
        vp.b_r = num(p, ctx, "b_r", vp.b_r);
        vp.eps_r = num(p, ctx, "eps_r", vp.eps_r);
    }

    if (j.contains("gains")) {
        const json& g = j.at("gains");
        const std::string ctx = origin + ".gains";
        reject_unknown(g, ctx,
                       {"k_p", "k_psi", "k_u", "k_r", "gamma_psi", "gamma_u",
                        "gamma_r", "c_d"});
        Gains& gg = cfg.gains;
        gg.k_p = num(g, ctx, "k_p", gg.k_p);
        gg.k_psi = num(g, ctx, "k_psi", gg.k_psi);
        gg.k_u = num(g, ctx, "k_u", gg.k_u);
        gg.k_r = num(g, ctx, "k_r", gg.k_r);
        gg.gamma_psi = num(g, ctx, "gamma_psi", gg.gamma_psi);
        gg.gamma_u = num(g, ctx, "gamma_u", gg.gamma_u);
        gg.gamma_r = num(g, ctx, "gamma_r", gg.gamma_r);
        gg.c_d = num(g, ctx, "c_d", gg.c_d);
    }

    if (j.contains("cbf")) {
        const json& c = j.at("cbf");
        const std::string ctx = origin + ".cbf";
        reject_unknown(c, ctx, {"eps_psi", "eps_u", "alpha1", "alpha2", "k_class_k"});
        CbfParams& cp = cfg.cbf;
        cp.eps_psi = num(c, ctx, "eps_psi", cp.eps_psi);
        cp.eps_u = num(c, ctx, "eps_u", cp.eps_u);
        cp.alpha1 = num(c, ctx, "alpha1", cp.alpha1);
        cp.alpha2 = num(c, ctx, "alpha2", cp.alpha2);
        cp.k_class_k = num(c, ctx, "k_class_k", cp.k_class_k);
    }

    if (j.contains("mode")) {
        if (!j.at("mode").is_string())
            throw ScenarioError(origin + ".mode: expected a string");
        cfg.mode = parse_mode(j.at("mode").get<std::string>(), origin);
    }
    cfg.dt = num(j, origin, "dt", cfg.dt);
    cfg.duration = num(j, origin, "duration", cfg.duration);
    cfg.filter_mu = num(j, origin, "filter_mu", cfg.filter_mu);

    if (j.contains("initial_state")) {
        const json& s = j.at("initial_state");
        const std::string ctx = origin + ".initial_state";
        reject_unknown(s, ctx, {"x", "y", "psi", "u", "v", "r"});
        VesselState& st = cfg.initial_state;
        st.x = num(s, ctx, "x", st.x);
        st.y = num(s, ctx, "y", st.y);
        st.psi = num(s, ctx, "psi", st.psi);
        st.u = num(s, ctx, "u", st.u);
        st.v = num(s, ctx, "v", st.v);
        st.r = num(s, ctx, "r", st.r);
    }

    if (j.contains("trajectory")) {
        const json& t = j.at("trajectory");
        const std::string ctx = origin + ".trajectory";
        reject_unknown(t, ctx, {"x0", "y0", "psi0", "segments"});
        cfg.trajectory.x0 = num(t, ctx, "x0", cfg.trajectory.x0);
        cfg.trajectory.y0 = num(t, ctx, "y0", cfg.trajectory.y0);
        cfg.trajectory.psi0 = num(t, ctx, "psi0", cfg.trajectory.psi0);
        if (t.contains("segments")) {
            if (!t.at("segments").is_array())
                throw ScenarioError(ctx + ".segments: expected an array");
            cfg.trajectory.segments.clear();
            std::size_t i = 0;
            for (const json& seg : t.at("segments")) {
                const std::string sctx = ctx + ".segments[" + std::to_string(i++) + "]";
                reject_unknown(seg, sctx, {"duration", "u_ld", "psi_ld_dot"});
                TrajectorySegment ts;
                ts.duration = num(seg, sctx, "duration", 0.0);
                ts.u_ld = num(seg, sctx, "u_ld", 0.0);
                ts.psi_ld_dot = num(seg, sctx, "psi_ld_dot", 0.0);
                cfg.trajectory.segments.push_back(ts);
            }
        }
    }

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(origin + ": " + e.what());
    }
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path + ": cannot open scenario file");
    return parse_scenario(in, path);
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
    json j;
    j["plant"] = {
        {"m11", cfg.params.m11},   {"m22", cfg.params.m22},
        {"m33", cfg.params.m33},   {"d_u", cfg.params.d_u},
        {"d_v", cfg.params.d_v},   {"d_r", cfg.params.d_r},
        {"d_u2", cfg.params.d_u2}, {"d_u3", cfg.params.d_u3},
        {"d_v2", cfg.params.d_v2}, {"d_v3", cfg.params.d_v3},
        {"d_r2", cfg.params.d_r2}, {"d_r3", cfg.params.d_r3},
        {"b_u", cfg.params.b_u},   {"b_r", cfg.params.b_r},
        {"eps_r", cfg.params.eps_r}};
    j["gains"] = {{"k_p", cfg.gains.k_p},
                  {"k_psi", cfg.gains.k_psi},
                  {"k_u", cfg.gains.k_u},
                  {"k_r", cfg.gains.k_r},
                  {"gamma_psi", cfg.gains.gamma_psi},
                  {"gamma_u", cfg.gains.gamma_u},
                  {"gamma_r", cfg.gains.gamma_r},
                  {"c_d", cfg.gains.c_d}};
    j["cbf"] = {{"eps_psi", cfg.cbf.eps_psi},
                {"eps_u", cfg.cbf.eps_u},
                {"alpha1", cfg.cbf.alpha1},
                {"alpha2", cfg.cbf.alpha2},
                {"k_class_k", cfg.cbf.k_class_k}};
    j["mode"] = cfg.mode == Mode::QpFiltered ? "qp" : "reference";
    j["dt"] = cfg.dt;
    j["duration"] = cfg.duration;
    j["filter_mu"] = cfg.filter_mu;
    j["initial_state"] = {{"x", cfg.initial_state.x},     {"y", cfg.initial_state.y},
                          {"psi", cfg.initial_state.psi}, {"u", cfg.initial_state.u},
                          {"v", cfg.initial_state.v},     {"r", cfg.initial_state.r}};
    json segs = json::array();
    for (const auto& s : cfg.trajectory.segments)
        segs.push_back({{"duration", s.duration},
                        {"u_ld", s.u_ld},
                        {"psi_ld_dot", s.psi_ld_dot}});
    j["trajectory"] = {{"x0", cfg.trajectory.x0},
                       {"y0", cfg.trajectory.y0},
                       {"psi0", cfg.trajectory.psi0},
                       {"segments", segs}};
    return j.dump(2) + "\n";
}

}  // namespace towtrack
