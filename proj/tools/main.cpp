// Command-line front end: construct coherent-state families, run the
// verification checks, and emit machine-readable reports.
//
// Exit codes: 0 when everything requested passed, 2 on a validation error
// (bad flags or parameters), 1 on an internal error or a failed check.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "scs/integration.hpp"
#include "scs/serialize.hpp"
#include "scs/states.hpp"
#include "scs/verify.hpp"

namespace {

using scs::Json;
using Complex = std::complex<double>;

constexpr const char* kFamilyHelp =
    "Family tags and parameter constraints:\n"
    "  su2-fixed   --n >= 0\n"
    "  su2-charge  --q any integer, --rmax >= 0\n"
    "  su3-fixed   --n >= 0\n"
    "  su3-charge  --q, --l with l >= max(0, q), --pmax >= 0\n"
    "  sun-fixed   --n >= 0 (modes from --z length)\n"
    "  sun-charge  --charges q1,..,q_{N-1} with every suffix sum >= 0, --cutoff >= 0\n"
    "  canonical   --z single coordinate, --cutoff >= 0  (state only)\n"
    "  pair        --zeta, --q >= 0, --cutoff >= 0       (state only)\n"
    "  fan-su3     --zeta, --qbar, --y with y+qbar >= 0 and 2y-qbar >= 0, --cutoff >= 0\n"
    "Sphere points: --z re+imi,re+imi,... (renormalized when within 1e-9 of unit\n"
    "norm, rejected otherwise) or --angles theta,phi,psi for two-mode families.";

Complex parse_complex(const std::string& token) {
    std::string s;
    for (char c : token) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s.empty()) throw scs::InvalidSpec("empty complex number");
    auto to_double = [](const std::string& text) {
        if (text.empty() || text == "+") return 1.0;
        if (text == "-") return -1.0;
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw scs::InvalidSpec("bad number: " + text);
        return v;
    };
    if (s.back() == 'i' || s.back() == 'I') {
        const std::string body = s.substr(0, s.size() - 1);
        // Split at the last +/- that is not an exponent sign.
        for (std::size_t k = body.size(); k-- > 1;) {
            if ((body[k] == '+' || body[k] == '-') &&
                body[k - 1] != 'e' && body[k - 1] != 'E') {
                return {to_double(body.substr(0, k)), to_double(body.substr(k))};
            }
        }
        return {0.0, to_double(body)};
    }
    return {to_double(s), 0.0};
}

Eigen::VectorXcd parse_complex_list(const std::string& text) {
    std::vector<Complex> values;
    std::string token;
    for (char c : text + ",") {
        if (c == ',') {
            if (!token.empty()) values.push_back(parse_complex(token));
            token.clear();
        } else {
            token += c;
        }
    }
    if (values.empty()) throw scs::InvalidSpec("expected a comma-separated complex list");
    Eigen::VectorXcd v(static_cast<std::int64_t>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<std::int64_t>(i)] = values[i];
    return v;
}

std::vector<double> parse_double_list(const std::string& text, std::size_t expect) {
    std::vector<double> values;
    std::string token;
    for (char c : text + ",") {
        if (c == ',') {
            if (!token.empty()) values.push_back(std::stod(token));
            token.clear();
        } else {
            token += c;
        }
    }
    if (values.size() != expect) throw scs::InvalidSpec("expected " + std::to_string(expect) + " numbers");
    return values;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::string token;
    for (char c : text + ",") {
        if (c == ',') {
            if (!token.empty()) values.push_back(std::stoi(token));
            token.clear();
        } else {
            token += c;
        }
    }
    return values;
}

// Sphere-point inputs are renormalized only within 1e-9 of unit norm;
// silently normalizing anything further off would hide a user error.
scs::SpherePoint sphere_from_coords(Eigen::VectorXcd coords) {
    const double norm = coords.norm();
    if (std::abs(norm - 1.0) > 1e-9) {
        throw scs::InvalidSpec("coordinates are not on the unit sphere (|norm-1| > 1e-9)");
    }
    coords /= norm;
    return scs::SpherePoint(std::move(coords));
}

scs::SpherePoint parse_sphere(const std::string& z_text, const std::string& angles_text,
                              int expected_dim) {
    if (!angles_text.empty()) {
        if (expected_dim != 2) {
            throw scs::InvalidSpec("--angles applies to two-mode families only");
        }
        const auto a = parse_double_list(angles_text, 3);
        return scs::euler_to_sphere(scs::EulerAngles{a[0], a[1], a[2]});
    }
    if (z_text.empty()) throw scs::InvalidSpec("missing --z (or --angles) sphere point");
    Eigen::VectorXcd coords = parse_complex_list(z_text);
    if (expected_dim > 0 && coords.size() != expected_dim) {
        throw scs::InvalidSpec("expected " + std::to_string(expected_dim) + " coordinates");
    }
    return sphere_from_coords(std::move(coords));
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw scs::Error("cannot open output file: " + path);
    out << text;
}

void emit(const Json& j, const std::string& output_path) {
    std::cout << j.dump(2) << "\n";
    if (!output_path.empty()) write_text(output_path, j.dump() + "\n");
}

void print_report_line(const scs::CheckReport& r) {
    std::string params;
    for (const auto& [k, v] : r.params) {
        if (!params.empty()) params += ';';
        params += k + "=" + v;
    }
    if (params.size() > 46) params = params.substr(0, 43) + "...";
    std::printf("%-26s %-46s %11.3e %8.1e %-4s %8.2fms\n", r.name.c_str(), params.c_str(),
                r.residual, r.tolerance, r.passed ? "ok" : "FAIL", r.runtime_ms);
}

struct Options {
    std::string kind, family, group, format = "json";
    std::string z_text, w_text, angles_text, zeta_text, charges_text, spec_text;
    std::string output, dump, dump_gram;
    int modes = 2, n = 0, nmax = 12, q = 0, rmax = 12, l = 0, pmax = 12, cutoff = 12;
    int qbar = 0, y = 0, trials = 100;
    int radial_order = 0, phase_points = 0;  // 0 = derive from the family
    long long samples = 1'000'000;
    std::uint64_t seed = 1234;
    double j = 0.5;
    bool mc = false;
    bool default_suite = true;
};

scs::SectorSpec sector_spec_from_options(const Options& opt) {
    if (!opt.spec_text.empty()) {
        return scs::sector_spec_from_json(Json::parse(opt.spec_text, nullptr, true));
    }
    if (opt.kind == "fixed-total") return scs::fixed_total_spec(opt.modes, opt.n);
    if (opt.kind == "plain-truncation") return scs::plain_truncation_spec(opt.modes, opt.nmax);
    if (opt.kind == "su2-charge") return scs::su2_charge_spec(opt.q, opt.rmax);
    if (opt.kind == "su3-charge-hyper") return scs::su3_charge_spec(opt.q, opt.l, opt.pmax);
    if (opt.kind == "sun-charges") {
        return scs::sun_charges_spec(opt.modes, parse_int_list(opt.charges_text), opt.cutoff);
    }
    throw scs::InvalidSpec("unknown sector kind: " + opt.kind);
}

scs::FamilySpec roi_family_from_options(const Options& opt) {
    if (opt.family == "su2-fixed") return scs::SU2FixedNFamily{opt.n};
    if (opt.family == "su2-charge") return scs::SU2ChargeFamily{opt.q, opt.rmax};
    if (opt.family == "su3-fixed") return scs::SU3FixedNFamily{opt.n};
    if (opt.family == "su3-charge") return scs::SU3ChargeFamily{opt.q, opt.l, opt.pmax};
    if (opt.family == "sun-fixed") return scs::SUNFixedNFamily{opt.modes, opt.n};
    if (opt.family == "sun-charge") {
        return scs::SUNChargeFamily{opt.modes, parse_int_list(opt.charges_text), opt.cutoff};
    }
    throw scs::InvalidSpec("unknown resolution-of-identity family: " + opt.family);
}

int run_basis(const Options& opt) {
    const auto basis = scs::enumerate_sector(sector_spec_from_options(opt));
    Json j;
    j["spec"] = scs::to_json(basis->spec());
    j["dim"] = basis->dim();
    Json states = Json::array();
    for (const auto& occ : basis->states()) states.push_back(occ);
    j["states"] = std::move(states);
    emit(j, opt.output);
    return 0;
}

int run_state(const Options& opt) {
    std::optional<scs::Ket> ket;
    bool charge_family = false;
    if (opt.family == "canonical") {
        ket = scs::canonical_cs(parse_complex(opt.z_text), opt.cutoff);
    } else if (opt.family == "su2-fixed") {
        ket = scs::su2_fixed_spin(parse_sphere(opt.z_text, opt.angles_text, 2), opt.n);
    } else if (opt.family == "su2-charge") {
        ket = scs::su2_charge_cs(parse_sphere(opt.z_text, opt.angles_text, 2), opt.q, opt.rmax);
        charge_family = true;
    } else if (opt.family == "su3-fixed") {
        ket = scs::su3_fixed_n(parse_sphere(opt.z_text, opt.angles_text, 3), opt.n);
    } else if (opt.family == "su3-charge") {
        ket = scs::su3_charge_cs(parse_sphere(opt.z_text, opt.angles_text, 3), opt.q, opt.l,
                                 opt.pmax);
        charge_family = true;
    } else if (opt.family == "sun-fixed") {
        ket = scs::sun_fixed_n(parse_sphere(opt.z_text, opt.angles_text, 0), opt.n);
    } else if (opt.family == "sun-charge") {
        ket = scs::sun_charge_cs(parse_sphere(opt.z_text, opt.angles_text, 0),
                                 parse_int_list(opt.charges_text), opt.cutoff);
        charge_family = true;
    } else if (opt.family == "pair") {
        ket = scs::pair_cs_bhaumik(scs::PlanePoint{parse_complex(opt.zeta_text)}, opt.q,
                                   opt.cutoff);
    } else if (opt.family == "fan-su3") {
        ket = scs::fan_su3_cs(scs::PlanePoint{parse_complex(opt.zeta_text)}, opt.qbar, opt.y,
                              opt.cutoff);
    } else {
        throw scs::InvalidSpec("unknown state family: " + opt.family);
    }

    Json j = scs::to_json(*ket);
    j["norm2"] = scs::norm2(*ket);
    if (charge_family) {
        // Truncation diagnostic: tail ratio >= 1 marks a non-convergent tail.
        const scs::SpherePoint z = parse_sphere(opt.z_text, opt.angles_text, 0);
        const double ratio = scs::charge_tail_ratio(z, *ket->basis);
        j["tail_ratio"] = ratio;
        j["tail_converges"] = ratio < 1.0;
    }
    emit(j, opt.output);
    return 0;
}

int run_overlap(const Options& opt) {
    Complex kernel, numeric;
    if (opt.group == "su2") {
        const auto w = parse_sphere(opt.w_text, "", 2);
        const auto z = parse_sphere(opt.z_text, "", 2);
        kernel = scs::overlap_su2_kernel(w, z, opt.n, opt.q);
        const int rungs = (opt.n - std::abs(opt.q)) / 2 + 2;
        numeric = scs::fock_inner(scs::su2_fixed_spin(w, opt.n),
                                  scs::su2_charge_cs(z, opt.q, std::max(1, rungs)));
    } else if (opt.group == "su3") {
        const auto w = parse_sphere(opt.w_text, "", 3);
        const auto z = parse_sphere(opt.z_text, "", 3);
        kernel = scs::overlap_su3_kernel(w, z, opt.n, opt.q, opt.l);
        const int rungs = std::max(1, (opt.n - 2 * opt.l + opt.q) / 3 + 2);
        numeric = scs::fock_inner(scs::su3_fixed_n(w, opt.n),
                                  scs::su3_charge_cs(z, opt.q, opt.l, rungs));
    } else {
        throw scs::InvalidSpec("overlap: --group must be su2 or su3");
    }
    Json j;
    j["kernel"] = {kernel.real(), kernel.imag()};
    j["numeric"] = {numeric.real(), numeric.imag()};
    j["abs_diff"] = std::abs(kernel - numeric);
    emit(j, opt.output);
    return std::abs(kernel - numeric) <= 1e-10 ? 0 : 1;
}

int run_algebra_check(const Options& opt) {
    std::vector<scs::CheckReport> reports;
    std::optional<scs::GeneratorSet> gens;
    if (opt.group == "su2") {
        const auto basis = scs::enumerate_sector(scs::fixed_total_spec(2, opt.n));
        gens = scs::su2_generators(basis);
        reports.push_back(scs::check_lie_algebra(*gens));
        reports.push_back(scs::check_casimir(basis));
    } else if (opt.group == "su3") {
        gens = scs::su3_generators(scs::enumerate_sector(scs::fixed_total_spec(3, opt.n)));
        reports.push_back(scs::check_lie_algebra(*gens));
    } else if (opt.group == "eriksson") {
        gens = scs::eriksson_generators(scs::enumerate_sector(scs::fixed_total_spec(3, opt.n)));
        reports.push_back(scs::check_lie_algebra(*gens));
    } else {
        throw scs::InvalidSpec("algebra-check: --group must be su2, su3 or eriksson");
    }
    if (!opt.dump.empty()) {
        Json dump = Json::array();
        for (const auto& g : gens->generators) dump.push_back(scs::to_json(g));
        write_text(opt.dump, dump.dump() + "\n");
    }
    bool all = true;
    std::string lines;
    for (const auto& r : reports) {
        print_report_line(r);
        lines += scs::to_json(r).dump() + "\n";
        all = all && r.passed;
    }
    if (!opt.output.empty()) write_text(opt.output, lines);
    return all ? 0 : 1;
}

int run_roi_check(const Options& opt) {
    const scs::FamilySpec family = roi_family_from_options(opt);
    const double constant = scs::roi_constant(family);
    Json j;
    double residual;
    bool passed;
    if (opt.mc) {
        const scs::McGram mc =
            scs::roi_matrix_mc(family, static_cast<std::int64_t>(opt.samples), opt.seed);
        residual = scs::roi_residual(mc.gram, constant);
        const double mean_error = std::abs(mc.diag_mean - constant);
        passed = mean_error <= 3.0 * mc.diag_std_error;
        j = scs::gram_report(constant, residual, mc.gram.rows());
        j["diag_mean"] = mc.diag_mean;
        j["sigma"] = mc.diag_std_error;
        j["samples"] = opt.samples;
        j["seed"] = opt.seed;
        j["rng"] = scs::kRngAlgorithm;
    } else {
        const scs::QuadratureGrid grid =
            (opt.radial_order > 0 && opt.phase_points > 0)
                ? scs::polar_grid(scs::family_mode_count(family), opt.radial_order,
                                  opt.phase_points)
                : scs::sufficient_grid(family);
        const Eigen::MatrixXcd gram = scs::roi_matrix(family, grid);
        residual = scs::roi_residual(gram, constant);
        passed = residual <= (scs::family_is_charge(family) ? 1e-8 : 1e-10);
        j = scs::gram_report(constant, residual, gram.rows());
        j["nodes"] = grid.size();
        j["exactness"] = {{"max_radial_degree", grid.exactness().max_radial_degree},
                          {"max_phase_frequency", grid.exactness().max_phase_frequency}};
    }
    emit(j, opt.output);
    if (!opt.dump_gram.empty()) {
        write_text(opt.dump_gram,
                   scs::gram_report(constant, residual, j["dim"].get<std::int64_t>()).dump() + "\n");
    }
    return passed ? 0 : 1;
}

int run_group_check(const Options& opt) {
    const int two_j = static_cast<int>(std::lround(2.0 * opt.j));
    if (std::abs(2.0 * opt.j - two_j) > 1e-9 || two_j < 0) {
        throw scs::InvalidSpec("group-check: --j must be a non-negative half-integer");
    }
    const auto angles = scs::default_angle_grid();
    const auto report = scs::check_group_action(two_j, angles);
    print_report_line(report);
    if (!opt.output.empty()) write_text(opt.output, scs::to_json(report).dump() + "\n");
    return report.passed ? 0 : 1;
}

int run_suite(const Options& opt) {
    const auto reports = scs::default_suite(opt.seed);
    int failures = 0;
    std::string jsonl;
    std::string csv = scs::csv_header() + "\n";
    for (const auto& r : reports) {
        print_report_line(r);
        jsonl += scs::to_json(r).dump() + "\n";
        csv += scs::to_csv_row(r) + "\n";
        if (!r.passed) ++failures;
    }
    std::printf("%zu checks, %d failures (seed %llu)\n", reports.size(), failures,
                static_cast<unsigned long long>(opt.seed));
    if (!opt.output.empty()) {
        write_text(opt.output, opt.format == "csv" ? csv : jsonl);
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Schwinger-boson coherent states on truncated Fock spaces.\n"
        "Set SCS_THREADS to parallelize Gram-matrix accumulation; results are\n"
        "bit-identical for any thread count."};
    app.require_subcommand(1);
    Options opt;

    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--output", opt.output, "Write the machine-readable report here");
    };

    CLI::App* basis = app.add_subcommand("basis", "Enumerate a sector basis");
    basis->add_option("--modes", opt.modes, "Number of modes");
    basis->add_option("--kind", opt.kind,
                      "Sector kind: fixed-total (--n), plain-truncation (--nmax), su2-charge "
                      "(--q --rmax), su3-charge-hyper (--q --l --pmax), sun-charges "
                      "(--charges --cutoff)");
    basis->add_option("--spec", opt.spec_text, "Sector spec as JSON (alternative to --kind)");
    basis->add_option("--n", opt.n, "Total occupation");
    basis->add_option("--nmax", opt.nmax, "Per-mode cutoff");
    basis->add_option("--q", opt.q, "Charge");
    basis->add_option("--rmax", opt.rmax, "Ladder truncation (su2-charge)");
    basis->add_option("--l", opt.l, "Hypercharge parameter, l >= max(0, q)");
    basis->add_option("--pmax", opt.pmax, "Ladder truncation (su3-charge-hyper)");
    basis->add_option("--charges", opt.charges_text, "Comma-separated q_1..q_{N-1}");
    basis->add_option("--cutoff", opt.cutoff, "Ladder truncation (sun-charges)");
    add_output(basis);

    CLI::App* state = app.add_subcommand("state", std::string("Construct a coherent state\n") +
                                                      kFamilyHelp);
    state->add_option("--family", opt.family, "Family tag (see subcommand help)")->required();
    state->add_option("--z", opt.z_text, "Sphere point (or single coordinate for canonical)");
    state->add_option("--angles", opt.angles_text, "theta,phi,psi alternative for 2-mode input");
    state->add_option("--zeta", opt.zeta_text, "Plane coordinate for pair / fan-su3");
    state->add_option("--n", opt.n, "Total occupation (fixed-n families)");
    state->add_option("--q", opt.q, "Charge");
    state->add_option("--l", opt.l, "Hypercharge parameter");
    state->add_option("--rmax", opt.rmax, "SU(2) ladder truncation (default 12)");
    state->add_option("--pmax", opt.pmax, "SU(3) ladder truncation (default 12)");
    state->add_option("--cutoff", opt.cutoff, "Ladder truncation (default 12)");
    state->add_option("--charges", opt.charges_text, "SU(N) charges q_1..q_{N-1}");
    state->add_option("--qbar", opt.qbar, "fan-su3 charge");
    state->add_option("--y", opt.y, "fan-su3 hypercharge");
    add_output(state);

    CLI::App* overlap = app.add_subcommand(
        "overlap", "Closed-form overlap kernel vs the summed inner product");
    overlap->add_option("--group", opt.group, "su2 or su3")->required();
    overlap->add_option("--w", opt.w_text, "Fixed-n sphere point")->required();
    overlap->add_option("--z", opt.z_text, "Charge-state sphere point")->required();
    overlap->add_option("--n", opt.n, "Total occupation of the fixed-n state");
    overlap->add_option("--q", opt.q, "Charge");
    overlap->add_option("--l", opt.l, "Hypercharge parameter (su3)");
    add_output(overlap);

    CLI::App* algebra = app.add_subcommand("algebra-check",
                                           "Lie-algebra and Casimir identities on a fixed-n "
                                           "sector");
    algebra->add_option("--group", opt.group, "su2, su3 or eriksson")->required();
    algebra->add_option("--n", opt.n, "Total occupation of the sector");
    algebra->add_option("--dump", opt.dump, "Write generator triplet dumps to this file");
    add_output(algebra);

    CLI::App* roi = app.add_subcommand(
        "roi-check", std::string("Resolution-of-identity Gram matrix\n") + kFamilyHelp);
    roi->add_option("--family", opt.family,
                    "su2-fixed | su2-charge | su3-fixed | su3-charge | sun-fixed | sun-charge")
        ->required();
    roi->add_option("--n", opt.n, "Total occupation (fixed-n families)");
    roi->add_option("--q", opt.q, "Charge");
    roi->add_option("--l", opt.l, "Hypercharge parameter");
    roi->add_option("--rmax", opt.rmax, "SU(2) ladder truncation (default 12)");
    roi->add_option("--pmax", opt.pmax, "SU(3) ladder truncation (default 12)");
    roi->add_option("--cutoff", opt.cutoff, "SU(N) ladder truncation (default 12)");
    roi->add_option("--charges", opt.charges_text, "SU(N) charges q_1..q_{N-1}");
    roi->add_option("--modes", opt.modes, "Mode count for sun-* families");
    roi->add_option("--radial-order", opt.radial_order, "Override the Gauss-Legendre order");
    roi->add_option("--phase-points", opt.phase_points, "Override the phase points per circle");
    roi->add_flag("--mc", opt.mc, "Monte Carlo estimate instead of the certified grid");
    roi->add_option("--samples", opt.samples, "Monte Carlo sample count (default 1e6)");
    roi->add_option("--seed", opt.seed, "Monte Carlo seed");
    roi->add_option("--dump-gram", opt.dump_gram,
                    "Write {constant, residual, dim} JSON to this file");
    add_output(roi);

    CLI::App* group = app.add_subcommand("group-check",
                                         "Group-action equivalence over the 27-point Euler grid");
    group->add_option("--j", opt.j, "Spin (half-integer)")->required();
    add_output(group);

    CLI::App* suite = app.add_subcommand("suite", "Run the full verification suite");
    suite->add_flag("--default", opt.default_suite, "Default parameters (the regression gate)");
    suite->add_option("--seed", opt.seed, "Base seed for the randomized sweeps");
    suite->add_option("--format", opt.format, "Report file format: json (JSON lines) or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    add_output(suite);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 2;
    }

    try {
        if (basis->parsed()) return run_basis(opt);
        if (state->parsed()) return run_state(opt);
        if (overlap->parsed()) return run_overlap(opt);
        if (algebra->parsed()) return run_algebra_check(opt);
        if (roi->parsed()) return run_roi_check(opt);
        if (group->parsed()) return run_group_check(opt);
        if (suite->parsed()) return run_suite(opt);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const scs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
