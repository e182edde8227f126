#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "mixnorm/clt_lab.hpp"

namespace mixnorm {

namespace csv {

/// Numbers are rendered with %.12g: enough digits to make regressions
/// visible, stable across platforms with IEEE doubles, and identical
/// between runs, which is what the byte-identical-output contract needs.
inline std::string number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string count(std::size_t n) { return std::to_string(n); }

inline std::string flag(bool b) { return b ? "true" : "false"; }

} // namespace csv

/// One row of the constants table.
struct ConstantRow {
    std::string constant;
    double parameter = 0.0;
    double value = 0.0;
};

inline std::string verification_csv(const std::string& experiment_id, const VerificationReport& report) {
    std::string out = "experiment_id,theorem,n,lhs,stderr,ci_upper,rhs,holds,margin_ratio\n";
    for (const ReportRow& row : report.rows) {
        out += experiment_id;
        out += ',';
        out += report.theorem;
        out += ',';
        out += csv::count(row.n);
        out += ',';
        out += csv::number(row.lhs.value);
        out += ',';
        out += csv::number(row.lhs.std_error);
        out += ',';
        out += csv::number(row.lhs.ci_upper95);
        out += ',';
        out += csv::number(row.rhs_bound);
        out += ',';
        out += csv::flag(row.holds);
        out += ',';
        out += csv::number(row.margin_ratio);
        out += '\n';
    }
    return out;
}

inline std::string clt_csv(const std::string& experiment_id, const std::vector<CltRow>& rows) {
    std::string out = "experiment_id,n,ks_distance,ks_critical\n";
    for (const CltRow& row : rows) {
        out += experiment_id;
        out += ',';
        out += csv::count(row.n);
        out += ',';
        out += csv::number(row.ks_distance);
        out += ',';
        out += csv::number(row.ks_critical);
        out += '\n';
    }
    return out;
}

inline std::string tail_csv(const std::string& experiment_id, const std::vector<TailProbe>& probes) {
    std::string out = "experiment_id,n,fitted_c,x,empirical_tail,bound_curve,exceedances,below_curve\n";
    for (const TailProbe& probe : probes) {
        for (const TailRow& row : probe.rows) {
            out += experiment_id;
            out += ',';
            out += csv::count(probe.n);
            out += ',';
            out += csv::number(probe.fitted_c);
            out += ',';
            out += csv::number(row.x);
            out += ',';
            out += csv::number(row.empirical_tail);
            out += ',';
            out += csv::number(row.bound_curve);
            out += ',';
            out += csv::count(row.exceedances);
            out += ',';
            out += csv::flag(row.below_curve);
            out += '\n';
        }
    }
    return out;
}

inline std::string constants_csv(const std::string& experiment_id, const std::vector<ConstantRow>& rows) {
    std::string out = "experiment_id,constant,parameter,value\n";
    for (const ConstantRow& row : rows) {
        out += experiment_id;
        out += ',';
        out += row.constant;
        out += ',';
        out += csv::number(row.parameter);
        out += ',';
        out += csv::number(row.value);
        out += '\n';
    }
    return out;
}

inline std::string norm_csv(const std::string& experiment_id, double value) {
    std::string out = "experiment_id,value\n";
    out += experiment_id;
    out += ',';
    out += csv::number(value);
    out += '\n';
    return out;
}

} // namespace mixnorm
