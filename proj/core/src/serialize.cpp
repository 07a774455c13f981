#include "scs/serialize.hpp"

#include <cstdio>

namespace scs {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

Json to_json(const SectorSpec& spec) {
    Json j;
    j["modes"] = spec.mode_count;
    if (const auto* ft = std::get_if<FixedTotal>(&spec.constraint)) {
        j["kind"] = "fixed-total";
        j["n"] = ft->n;
    } else if (const auto* pt = std::get_if<PlainTruncation>(&spec.constraint)) {
        j["kind"] = "plain-truncation";
        j["nmax"] = pt->n_max;
    } else if (const auto* c2 = std::get_if<SU2Charge>(&spec.constraint)) {
        j["kind"] = "su2-charge";
        j["q"] = c2->q;
        j["rmax"] = c2->r_max;
    } else if (const auto* c3 = std::get_if<SU3ChargeHyper>(&spec.constraint)) {
        j["kind"] = "su3-charge-hyper";
        j["q"] = c3->q;
        j["l"] = c3->l;
        j["pmax"] = c3->p_max;
    } else {
        const auto& cn = std::get<SUNCharges>(spec.constraint);
        j["kind"] = "sun-charges";
        j["charges"] = cn.charges;
        j["cutoff"] = cn.cutoff;
    }
    return j;
}

SectorSpec sector_spec_from_json(const Json& j) {
    try {
        const int modes = j.at("modes").get<int>();
        const std::string kind = j.at("kind").get<std::string>();
        SectorSpec spec;
        spec.mode_count = modes;
        if (kind == "fixed-total") {
            spec.constraint = FixedTotal{j.at("n").get<int>()};
        } else if (kind == "plain-truncation") {
            spec.constraint = PlainTruncation{j.at("nmax").get<int>()};
        } else if (kind == "su2-charge") {
            spec.constraint = SU2Charge{j.at("q").get<int>(), j.at("rmax").get<int>()};
        } else if (kind == "su3-charge-hyper") {
            spec.constraint = SU3ChargeHyper{j.at("q").get<int>(), j.at("l").get<int>(),
                                             j.at("pmax").get<int>()};
        } else if (kind == "sun-charges") {
            spec.constraint = SUNCharges{j.at("charges").get<std::vector<int>>(),
                                         j.at("cutoff").get<int>()};
        } else {
            throw InvalidSpec("unknown sector kind: " + kind);
        }
        spec.validate();
        return spec;
    } catch (const Json::exception& e) {
        throw InvalidSpec(std::string("malformed sector spec: ") + e.what());
    }
}

Json to_json(const Ket& ket) {
    Json j;
    j["basis"] = to_json(ket.basis->spec());
    Json amps = Json::array();
    for (std::int64_t i = 0; i < ket.amps.size(); ++i) {
        amps.push_back({ket.amps[i].real(), ket.amps[i].imag()});
    }
    j["amps"] = std::move(amps);
    return j;
}

Json to_json(const SparseOperator& op) {
    Json rows = Json::array(), cols = Json::array(), re = Json::array(), im = Json::array();
    for (const auto& e : op.entries()) {
        rows.push_back(e.row);
        cols.push_back(e.col);
        re.push_back(e.value.real());
        im.push_back(e.value.imag());
    }
    Json j;
    j["rows"] = std::move(rows);
    j["cols"] = std::move(cols);
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

Json to_json(const CheckReport& report) {
    Json params;
    for (const auto& [key, value] : report.params) params[key] = value;
    Json j;
    j["check"] = report.name;
    j["params"] = std::move(params);
    j["residual"] = report.residual;
    j["tolerance"] = report.tolerance;
    j["passed"] = report.passed;
    j["runtime_ms"] = report.runtime_ms;
    return j;
}

std::string csv_header() {
    return "check_name,params,residual,tolerance,passed,runtime_ms";
}

std::string to_csv_row(const CheckReport& report) {
    std::string params;
    for (const auto& [key, value] : report.params) {
        if (!params.empty()) params += ';';
        params += key + "=" + value;
    }
    std::string row = report.name;
    row += ',';
    row += params;
    row += ',';
    row += fmt_double(report.residual);
    row += ',';
    row += fmt_double(report.tolerance);
    row += ',';
    row += report.passed ? "true" : "false";
    row += ',';
    row += fmt_double(report.runtime_ms);
    return row;
}

Json gram_report(double constant, double residual, std::int64_t dim) {
    Json j;
    j["constant"] = constant;
    j["residual"] = residual;
    j["dim"] = dim;
    return j;
}

}  // namespace scs
