#include "towtrack/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace towtrack {

const char* csv_header() {
    return "t,x,y,psi,u,v,r,x_d,y_d,psi_ld,u_l,psi_a,psi_l,p_e,psi_b,psi_le,"
           "tau_u_ref,tau_r_ref,tau_u,tau_r,X_u,X_r,h_cc1,h_cc2,branch,"
           "qp_status,V2";
}

void write_csv(const SimLog& log, std::ostream& out) {
    out << csv_header() << '\n';
    char buf[32];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.9g", v);
        out << buf << sep;
    };
    for (const SimRecord& r : log.records) {
        put(r.t, ',');
        put(r.state.x, ',');
        put(r.state.y, ',');
        put(r.state.psi, ',');
        put(r.state.u, ',');
        put(r.state.v, ',');
        put(r.state.r, ',');
        put(r.ref.x_d, ',');
        put(r.ref.y_d, ',');
        put(r.ref.psi_ld, ',');
        put(r.bundle.u_l, ',');
        put(r.bundle.psi_a, ',');
        put(r.bundle.psi_l, ',');
        put(r.bundle.p_e, ',');
        put(r.bundle.psi_b, ',');
        put(r.psi_le, ',');
        put(r.tau_ref.tau_u, ',');
        put(r.tau_ref.tau_r, ',');
        put(r.tau.tau_u, ',');
        put(r.tau.tau_r, ',');
        put(r.correction[0], ',');
        put(r.correction[1], ',');
        put(r.constraints.h_cc1, ',');
        put(r.constraints.h_cc2, ',');
        out << static_cast<int>(r.constraints.branch) << ',' << r.qp_status << ',';
        put(r.v2, '\n');
    }
}

void write_csv(const SimLog& log, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    write_csv(log, out);
    out.flush();
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

}  // namespace towtrack
