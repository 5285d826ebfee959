// Batch driver: evaluate transforms and norms, run condition checks and
// probes, and emit machine-readable results (JSON or CSV).

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "geoxform/general_transform.hpp"
#include "geoxform/norms.hpp"
#include "geoxform/verify.hpp"

using nlohmann::json;
using namespace geoxform;

namespace {

const double kPi = 3.14159265358979323846;

struct CommonOpts {
    std::string space = "rn";
    int dim = 3;
    int k = 1;
    std::string profile = "const:1";
    double h = 0.5;
    double r = 1.0;
    double p = 1.0, rexp = 1.0;
    double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0;
    double g = 0.0, g1 = 0.0, g2 = 0.0;
    double rel_tol = 1e-8, abs_tol = 1e-12;
    int max_depth = 40;
    unsigned long long seed = 1;
    std::string output;
    std::string format = "json";
};

Space parse_space(const std::string& name, int dim) {
    if (name == "rn") return flat(dim);
    if (name == "hn") return hyperbolic(dim);
    if (name == "sn") return spherical(dim);
    throw DomainError("space must be one of rn, hn, sn");
}

QuadratureSpec quad_of(const CommonOpts& o) {
    QuadratureSpec q;
    q.rel_tol = o.rel_tol;
    q.abs_tol = o.abs_tol;
    q.max_depth = o.max_depth;
    return q;
}

std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, delim))
        out.push_back(item);
    return out;
}

// density suffix of the profile grammar: cosh | cos | sinhpow:<e> | cospow:<e>
void parse_density(const std::string& text, double* sc_pow, double* scp_pow) {
    if (text == "cosh" || text == "cos") {
        *scp_pow += 1.0;
        return;
    }
    if (text.rfind("sinhpow:", 0) == 0 || text.rfind("sinpow:", 0) == 0) {
        *sc_pow += std::stod(text.substr(text.find(':') + 1));
        return;
    }
    if (text.rfind("cospow:", 0) == 0 || text.rfind("coshpow:", 0) == 0) {
        *scp_pow += std::stod(text.substr(text.find(':') + 1));
        return;
    }
    throw DomainError("unknown density: " + text);
}

RadialProfile parse_profile(const Space& space, Side side, const std::string& text) {
    const auto head = text.substr(0, text.find(':'));
    const auto rest = text.size() > head.size() ? text.substr(head.size() + 1) : "";
    const double sup = space.curvature == Curvature::Spherical
                           ? kPi / 2.0
                           : std::numeric_limits<double>::infinity();
    if (head == "const") {
        RadialProfile f = const_profile(std::stod(rest));
        f.t_hi = sup;
        return f;
    }
    if (head == "ball" || head == "annulus" || head == "equator") {
        auto parts = split(rest, ',');
        double sc = 0.0, scp = 0.0;
        double a = 0.0, b = 0.0;
        std::size_t first_density = 0;
        if (head == "ball") {
            a = 0.0;
            b = std::stod(parts.at(0));
            first_density = 1;
        } else if (head == "annulus") {
            a = std::stod(parts.at(0));
            b = std::stod(parts.at(1));
            first_density = 2;
        } else {
            if (space.curvature != Curvature::Spherical)
                throw DomainError("equator profiles live on the sphere");
            a = std::stod(parts.at(0));
            b = kPi / 2.0;
            first_density = 1;
        }
        for (std::size_t i = first_density; i < parts.size(); ++i) {
            auto kv = parts[i];
            if (kv.rfind("density=", 0) == 0)
                kv = kv.substr(8);
            parse_density(kv, &sc, &scp);
        }
        return power_profile(space, side, a, b, sc, scp);
    }
    if (head == "table") {
        std::ifstream in(rest);
        if (!in)
            throw DomainError("cannot open table file: " + rest);
        std::vector<std::pair<double, double>> rows;
        double t, v;
        while (in >> t >> v)
            rows.emplace_back(t, v);
        return table_profile(space, side, rows);
    }
    throw DomainError("unknown profile descriptor: " + text);
}

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&tt));
    return buf;
}

json config_json(const CommonOpts& o) {
    return json{{"space", o.space}, {"dim", o.dim},     {"k", o.k},
                {"profile", o.profile}, {"h", o.h},     {"r", o.r},
                {"p", o.p},         {"r_exp", o.rexp},  {"alpha1", o.a1},
                {"alpha2", o.a2},   {"beta1", o.b1},    {"beta2", o.b2},
                {"gamma", o.g},     {"gamma1", o.g1},   {"gamma2", o.g2},
                {"rel_tol", o.rel_tol}, {"abs_tol", o.abs_tol},
                {"max_depth", o.max_depth}, {"seed", o.seed}};
}

void emit(const CommonOpts& o, const json& doc) {
    if (!o.output.empty()) {
        std::ofstream out(o.output);
        out << doc.dump(2) << "\n";
    } else {
        std::cout << doc.dump(2) << "\n";
    }
}

void emit_text(const CommonOpts& o, const std::string& text) {
    if (!o.output.empty()) {
        std::ofstream out(o.output);
        out << text;
    } else {
        std::cout << text;
    }
}

ConditionInputs condition_inputs(const CommonOpts& o) {
    ConditionInputs in;
    in.n = o.dim;
    in.k = o.k;
    in.p = o.p;
    in.r = o.rexp;
    in.a1 = o.a1;
    in.a2 = o.a2;
    in.b1 = o.b1;
    in.b2 = o.b2;
    in.g = o.g;
    in.g1 = o.g1;
    in.g2 = o.g2;
    return in;
}

json report_json(const ConditionReport& rep) {
    return json{{"inequality", inequality_name(rep.id)},
                {"necessary_ok", rep.necessary_ok},
                {"sufficient_ok", rep.sufficient_ok},
                {"endpoint_flags", rep.endpoint_flags},
                {"citations", rep.rules}};
}

int worker_count() {
    if (const char* env = std::getenv("GEOXFORM_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1)
            return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// csv quoting per RFC-4180 (quote when needed, double inner quotes)
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for geodesic k-plane transforms on "
                 "constant-curvature spaces"};
    app.require_subcommand(1);
    app.set_config("--config");

    CommonOpts o;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--space", o.space, "rn | hn | sn");
        cmd->add_option("--dim", o.dim, "ambient dimension n");
        cmd->add_option("--k", o.k, "submanifold dimension k");
        cmd->add_option("--profile", o.profile, "profile descriptor");
        cmd->add_option("--h", o.h, "submanifold distance");
        cmd->add_option("--r", o.r, "ambient distance");
        cmd->add_option("--p", o.p, "source exponent p");
        cmd->add_option("--r-exp", o.rexp, "target exponent r");
        cmd->add_option("--alpha1", o.a1, "source weight exponent");
        cmd->add_option("--alpha2", o.a2, "source derivative-weight exponent");
        cmd->add_option("--beta1", o.b1, "target weight exponent");
        cmd->add_option("--beta2", o.b2, "target derivative-weight exponent");
        cmd->add_option("--gamma", o.g, "sup-norm weight exponent");
        cmd->add_option("--gamma1", o.g1, "sup-norm weight exponent 1");
        cmd->add_option("--gamma2", o.g2, "sup-norm weight exponent 2");
        cmd->add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance");
        cmd->add_option("--abs-tol", o.abs_tol, "quadrature absolute tolerance");
        cmd->add_option("--max-depth", o.max_depth, "quadrature refinement depth");
        cmd->add_option("--seed", o.seed, "probe RNG seed");
        cmd->add_option("--out", o.output, "output path (default stdout)");
        cmd->add_option("--format", o.format, "json | csv");
    };

    auto* evalT = app.add_subcommand("eval-transform", "radial k-plane transform");
    auto* evalD = app.add_subcommand("eval-dual", "radial dual transform");
    auto* evalG =
        app.add_subcommand("eval-general", "general transform of a radial profile");
    auto* normC = app.add_subcommand("norm", "weighted Lebesgue norms");
    std::string norm_side = "source";
    normC->add_option("--side", norm_side, "source | transform");
    auto* lorC = app.add_subcommand("lorentz-norm", "layered-set Lorentz norm");
    std::string layers_text = "0,1";
    lorC->add_option("--layers", layers_text, "a1,b1[,a2,b2,...]");
    auto* checkC = app.add_subcommand("check-conditions", "inequality predicates");
    std::string ineq_name = "existence-hn";
    checkC->add_option("--ineq", ineq_name, "inequality id");
    auto* scanC = app.add_subcommand("scan-region", "predicate sweep over a grid");
    std::string scan_spec = "p=1:3:9";
    std::string scan_spec2;
    scanC->add_option("--ineq", ineq_name, "inequality id");
    scanC->add_option("--scan", scan_spec, "field=lo:hi:count");
    scanC->add_option("--scan2", scan_spec2, "second field=lo:hi:count");
    auto* ratioC = app.add_subcommand("probe-ratio", "scaling-slope probe");
    std::string family_name_opt = "rn-ball";
    std::string lambdas_text;
    ratioC->add_option("--ineq", ineq_name, "inequality id");
    ratioC->add_option("--family", family_name_opt, "probe family");
    ratioC->add_option("--lambdas", lambdas_text, "comma-separated grid");
    auto* blowC = app.add_subcommand("probe-blowup", "counterexample divergences");
    std::string example_name = "hn-existence-boundary";
    std::string grid_text;
    double blow_a = 1.0, blow_gamma = 1.25, blow_witness = 0.5, blow_beta = 0.0;
    blowC->add_option("--example", example_name, "counterexample id");
    blowC->add_option("--grid", grid_text, "truncation grid");
    blowC->add_option("--inner-radius", blow_a, "annulus inner radius");
    blowC->add_option("--log-exponent", blow_gamma, "log exponent");
    blowC->add_option("--witness", blow_witness, "witness distance");
    blowC->add_option("--beta", blow_beta, "euclidean sup-norm weight");
    auto* endC = app.add_subcommand("probe-endpoint", "Lorentz endpoint probe");
    int end_count = 200;
    endC->add_option("--ineq", ineq_name, "endpoint inequality id");
    endC->add_option("--count", end_count, "number of random sets");
    auto* catC = app.add_subcommand("verify-catalog", "closed-form catalog check");
    int cat_grid = 8;
    catC->add_option("--grid-points", cat_grid, "grid points per family");
    auto* lemC = app.add_subcommand("lemma-suite", "randomized lemma checks");
    std::string lemma_opt = "all";
    long lemma_trials = 10000;
    lemC->add_option("--lemma", lemma_opt, "lemma id or 'all'");
    lemC->add_option("--trials", lemma_trials, "trials per lemma");
    auto* fracC = app.add_subcommand("fracint", "fractional-integral operations");
    std::string frac_mode = "probe-plus";
    double frac_alpha = 0.5, frac_x = 1.0, frac_a = 0.0;
    fracC->add_option("--mode", frac_mode,
                      "eval-lower | eval-upper | probe-plus | probe-minus");
    fracC->add_option("--alpha", frac_alpha, "fractional order");
    fracC->add_option("--x", frac_x, "evaluation point");
    fracC->add_option("--a", frac_a, "lower limit");
    fracC->add_option("--grid", grid_text, "truncation grid");
    fracC->add_option("--log-exponent", blow_gamma, "log exponent");
    fracC->add_option("--inner-radius", blow_a, "window scale");

    for (auto* cmd : {evalT, evalD, evalG, normC, lorC, checkC, scanC, ratioC,
                      blowC, endC, catC, lemC, fracC})
        add_common(cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        const Space space = parse_space(o.space, o.dim);
        const QuadratureSpec quad = quad_of(o);
        json doc;
        doc["config"] = config_json(o);
        doc["timestamp"] = timestamp_now();

        if (app.got_subcommand(evalT) || app.got_subcommand(evalG)) {
            doc["command"] = app.got_subcommand(evalT) ? "eval-transform"
                                                       : "eval-general";
            const RadialProfile f = parse_profile(space, Side::Ambient, o.profile);
            double value;
            if (app.got_subcommand(evalT)) {
                value = kplane_radial(space, o.k, f, o.h, quad);
                doc["citations"] = {"radial-kplane-formula"};
            } else {
                value = kplane_general(space, axis_coord(space, o.k, o.h),
                                       ambient_from_radial(space, f), quad);
                doc["citations"] = {"cap-kplane-formula"};
            }
            doc["value"] = value;
            doc["error_estimate"] = o.rel_tol * std::fabs(value);
            emit(o, doc);
        } else if (app.got_subcommand(evalD)) {
            doc["command"] = "eval-dual";
            const RadialProfile phi =
                parse_profile(space, Side::Submanifold, o.profile);
            const double value = dual_kplane_radial(space, o.k, phi, o.r, quad);
            doc["citations"] = {"radial-dual-formula"};
            doc["value"] = value;
            doc["error_estimate"] = o.rel_tol * std::fabs(value);
            emit(o, doc);
        } else if (app.got_subcommand(normC)) {
            doc["command"] = "norm";
            double value;
            if (norm_side == "source") {
                const RadialProfile f =
                    parse_profile(space, Side::Ambient, o.profile);
                value = lp_norm_radial(space, f, {o.a1, o.a2, o.p}, quad);
                doc["citations"] = {"radial-lp-norm"};
            } else {
                const RadialProfile f =
                    parse_profile(space, Side::Ambient, o.profile);
                value =
                    lr_norm_transform(space, o.k, f, {o.b1, o.b2, o.rexp}, quad);
                doc["citations"] = {"transform-lr-norm"};
            }
            doc["value"] = value;
            doc["error_estimate"] = o.rel_tol * std::fabs(value);
            emit(o, doc);
        } else if (app.got_subcommand(lorC)) {
            doc["command"] = "lorentz-norm";
            const auto parts = split(layers_text, ',');
            if (parts.size() % 2 != 0)
                throw DomainError("layers need an even number of endpoints");
            std::vector<std::pair<double, double>> ls;
            for (std::size_t i = 0; i + 1 < parts.size(); i += 2)
                ls.emplace_back(std::stod(parts[i]), std::stod(parts[i + 1]));
            const LayeredRadialSet set(ls);
            const double value =
                lorentz_p1_norm(space, set, {o.a1, o.a2, o.p}, quad);
            doc["citations"] = {"lorentz-p1-characteristic"};
            doc["value"] = value;
            doc["error_estimate"] = o.rel_tol * std::fabs(value);
            emit(o, doc);
        } else if (app.got_subcommand(checkC)) {
            doc["command"] = "check-conditions";
            Inequality id;
            if (!inequality_from_name(ineq_name, &id))
                throw DomainError("unknown inequality id: " + ineq_name);
            const auto rep = condition_check(id, condition_inputs(o));
            doc["report"] = report_json(rep);
            doc["citations"] = rep.rules;
            emit(o, doc);
        } else if (app.got_subcommand(scanC)) {
            Inequality id;
            if (!inequality_from_name(ineq_name, &id))
                throw DomainError("unknown inequality id: " + ineq_name);
            struct Axis {
                std::string field;
                std::vector<double> values;
            };
            auto parse_axis = [](const std::string& text) {
                Axis ax;
                const auto eq = text.find('=');
                if (eq == std::string::npos)
                    throw DomainError("scan spec must be field=lo:hi:count");
                ax.field = text.substr(0, eq);
                const auto parts = split(text.substr(eq + 1), ':');
                const double lo = std::stod(parts.at(0));
                const double hi = std::stod(parts.at(1));
                const int count = std::stoi(parts.at(2));
                if (count < 1)
                    throw DomainError("scan count must be positive");
                for (int i = 0; i < count; ++i)
                    ax.values.push_back(
                        count == 1 ? lo : lo + (hi - lo) * i / (count - 1.0));
                return ax;
            };
            const Axis ax1 = parse_axis(scan_spec);
            Axis ax2;
            if (!scan_spec2.empty())
                ax2 = parse_axis(scan_spec2);
            else
                ax2.values.push_back(0.0);

            auto apply = [](ConditionInputs in, const std::string& field,
                            double v) {
                if (field == "p") in.p = v;
                else if (field == "r") in.r = v;
                else if (field == "alpha1") in.a1 = v;
                else if (field == "alpha2") in.a2 = v;
                else if (field == "beta1") in.b1 = v;
                else if (field == "beta2") in.b2 = v;
                else if (field == "gamma") in.g = v;
                else if (field == "gamma1") in.g1 = v;
                else if (field == "gamma2") in.g2 = v;
                else throw DomainError("unknown scan field: " + field);
                return in;
            };

            struct Row {
                double v1, v2;
                ConditionReport rep;
            };
            std::vector<Row> rows(ax1.values.size() * ax2.values.size());
            std::atomic<std::size_t> cursor{0};
            const std::size_t total = rows.size();
            auto work = [&] {
                for (;;) {
                    const std::size_t i = cursor.fetch_add(1);
                    if (i >= total) return;
                    const double v1 = ax1.values[i / ax2.values.size()];
                    const double v2 = ax2.values[i % ax2.values.size()];
                    ConditionInputs in = apply(condition_inputs(o), ax1.field, v1);
                    if (!scan_spec2.empty())
                        in = apply(in, ax2.field, v2);
                    rows[i] = Row{v1, v2, condition_check(id, in)};
                }
            };
            std::vector<std::thread> pool;
            const int workers = std::min<int>(worker_count(), (int)total);
            for (int w = 1; w < workers; ++w)
                pool.emplace_back(work);
            work();
            for (auto& th : pool)
                th.join();

            if (o.format == "csv") {
                std::ostringstream csv;
                csv << csv_field(ax1.field);
                if (!scan_spec2.empty()) csv << "," << csv_field(ax2.field);
                csv << ",necessary_ok,sufficient_ok,endpoint_flags\r\n";
                for (const auto& row : rows) {
                    csv << row.v1;
                    if (!scan_spec2.empty()) csv << "," << row.v2;
                    std::string flags;
                    for (const auto& fl : row.rep.endpoint_flags) {
                        if (!flags.empty()) flags += ";";
                        flags += fl;
                    }
                    csv << "," << (row.rep.necessary_ok ? 1 : 0) << ","
                        << (row.rep.sufficient_ok ? 1 : 0) << ","
                        << csv_field(flags) << "\r\n";
                }
                emit_text(o, csv.str());
            } else {
                doc["command"] = "scan-region";
                json jrows = json::array();
                for (const auto& row : rows) {
                    json jr = report_json(row.rep);
                    jr[ax1.field] = row.v1;
                    if (!scan_spec2.empty()) jr[ax2.field] = row.v2;
                    jrows.push_back(jr);
                }
                doc["rows"] = jrows;
                emit(o, doc);
            }
        } else if (app.got_subcommand(ratioC)) {
            doc["command"] = "probe-ratio";
            Inequality id;
            if (!inequality_from_name(ineq_name, &id))
                throw DomainError("unknown inequality id: " + ineq_name);
            ProbeFamily fam;
            const std::map<std::string, ProbeFamilyId> families = {
                {"rn-ball", ProbeFamilyId::RnBall},
                {"rn-annulus", ProbeFamilyId::RnAnnulus},
                {"hn-ball-cosh", ProbeFamilyId::HnBallCosh},
                {"hn-ball-sinh-cosh", ProbeFamilyId::HnBallSinhCosh},
                {"hn-double-annulus", ProbeFamilyId::HnDoubleAnnulus},
                {"sn-ball-cos", ProbeFamilyId::SnBallCos},
                {"sn-ball-cos-sin-pow", ProbeFamilyId::SnBallCosSinPow},
                {"sn-equator-cos", ProbeFamilyId::SnEquatorCos},
                {"sn-equator-cos-pow", ProbeFamilyId::SnEquatorCosPow},
                {"sn-double-annulus", ProbeFamilyId::SnDoubleAnnulus},
                {"sn-annulus-near-zero", ProbeFamilyId::SnAnnulusNearZero}};
            const auto it = families.find(family_name_opt);
            if (it == families.end())
                throw DomainError("unknown family: " + family_name_opt);
            fam.id = it->second;
            if (!lambdas_text.empty()) {
                for (const auto& part : split(lambdas_text, ','))
                    fam.parameter_grid.push_back(std::stod(part));
            } else {
                for (int e = -6; e <= -2; ++e)
                    fam.parameter_grid.push_back(std::pow(2.0, e));
            }
            const auto res = ratio_probe(id, condition_inputs(o), fam, quad);
            doc["slope_small"] = res.slope_small;
            doc["slope_large"] = res.slope_large;
            doc["sup_ratio"] = res.sup_ratio;
            doc["lambdas"] = res.lambdas;
            doc["ratios"] = res.ratios;
            emit(o, doc);
        } else if (app.got_subcommand(blowC)) {
            doc["command"] = "probe-blowup";
            CounterexampleId id;
            bool found = false;
            for (int i = 0; i <= static_cast<int>(CounterexampleId::SnAnnulusK1);
                 ++i) {
                if (example_name ==
                    counterexample_name(static_cast<CounterexampleId>(i))) {
                    id = static_cast<CounterexampleId>(i);
                    found = true;
                }
            }
            if (!found)
                throw DomainError("unknown counterexample: " + example_name);
            BlowupParams prm;
            prm.n = o.dim;
            prm.k = o.k;
            prm.p = o.p;
            prm.a1 = o.a1;
            prm.a2 = o.a2;
            prm.g1 = o.g1;
            prm.g2 = o.g2;
            prm.beta = blow_beta;
            prm.gamma = blow_gamma;
            prm.a = blow_a;
            prm.witness = blow_witness;
            std::vector<double> grid;
            if (!grid_text.empty())
                for (const auto& part : split(grid_text, ','))
                    grid.push_back(std::stod(part));
            else
                grid = {1, 2, 3, 4, 5, 6, 7};
            const auto res = blowup_probe(id, prm, grid, quad);
            doc["values"] = res.values;
            doc["verdict"] = res.verdict == ProbeVerdict::Divergent ? "divergent"
                             : res.verdict == ProbeVerdict::Convergent
                                 ? "convergent"
                                 : "inconclusive";
            doc["source_norm"] = res.source_norm;
            doc["source_change"] = res.source_change;
            emit(o, doc);
        } else if (app.got_subcommand(endC)) {
            doc["command"] = "probe-endpoint";
            Inequality id;
            if (!inequality_from_name(ineq_name, &id))
                throw DomainError("unknown inequality id: " + ineq_name);
            const auto res = endpoint_lorentz_probe(id, condition_inputs(o),
                                                    end_count, o.seed, quad);
            doc["ran_family_sweep"] = res.ran_family_sweep;
            doc["empirical_sup"] = res.empirical_sup;
            doc["empirical_sup_half"] = res.empirical_sup_half;
            doc["stable"] = res.stable;
            doc["family_ratios"] = res.family_ratios;
            emit(o, doc);
        } else if (app.got_subcommand(catC)) {
            doc["command"] = "verify-catalog";
            json entries = json::array();
            struct Entry {
                ClosedFormFamily fam;
                Space space;
                int k;
                double lo, hi;
            };
            const int n = 3;
            std::vector<Entry> cat;
            cat.push_back({ClosedFormFamily(ClosedFormFamilyId::EuclideanBall, 1.0),
                           flat(n), 2, 0.05, 0.95});
            cat.push_back({ClosedFormFamily(ClosedFormFamilyId::HnBall, 1.0),
                           hyperbolic(n), 2, 0.05, 0.95});
            cat.push_back({ClosedFormFamily(ClosedFormFamilyId::HnBallCosh, 1.0),
                           hyperbolic(n), 2, 0.05, 0.95});
            cat.push_back(
                {ClosedFormFamily(ClosedFormFamilyId::HnBallSinhCosh, 1.0, 0.8, 2.0),
                 hyperbolic(n), 2, 0.1, 0.9});
            cat.push_back({ClosedFormFamily(ClosedFormFamilyId::SnBallPlain, 1.0),
                           spherical(n), 1, 0.05, 0.95});
            cat.push_back({ClosedFormFamily(ClosedFormFamilyId::SnBallCos, 1.0),
                           spherical(n), 1, 0.05, 0.95});
            cat.push_back(
                {ClosedFormFamily(ClosedFormFamilyId::SnBallCosSinPow, 1.0, 0.8, 2.0),
                 spherical(n), 1, 0.1, 0.9});
            cat.push_back({ClosedFormFamily(ClosedFormFamilyId::SnEquatorPlain, 0.8),
                           spherical(n), 2, 0.05, 1.4});
            cat.push_back({ClosedFormFamily(ClosedFormFamilyId::SnEquatorCos, 0.8),
                           spherical(n), 2, 0.05, 1.4});
            cat.push_back(
                {ClosedFormFamily(ClosedFormFamilyId::SnEquatorCosPow, 0.8, 1.0, 2.0),
                 spherical(n), 2, 0.05, 1.4});
            cat.push_back(
                {ClosedFormFamily(ClosedFormFamilyId::DualHnMixed, 0, 0, 1, 0.5, 1.0),
                 hyperbolic(n), 1, 0.1, 2.0});
            cat.push_back(
                {ClosedFormFamily(ClosedFormFamilyId::DualSnMixed, 0, 0, 1, 0.5, 1.0),
                 spherical(n), 1, 0.1, 1.4});
            bool all_ok = true;
            for (auto& e : cat) {
                const double ref = 0.5 * (e.lo + e.hi);
                calibrate_constant(e.space, e.k, e.fam, ref, quad);
                double worst = 0.0;
                for (int i = 0; i < cat_grid; ++i) {
                    const double x = e.lo + (e.hi - e.lo) * i / (cat_grid - 1.0);
                    const double cf = closed_form_eval(e.space, e.k, e.fam, x);
                    const double qv = e.fam.quadrature_value(e.space, e.k, x, quad);
                    const double scale = std::max(std::fabs(qv), 1e-30);
                    worst = std::max(worst, std::fabs(cf - qv) / scale);
                }
                const bool ok = worst <= 1e-6;
                all_ok = all_ok && ok;
                entries.push_back(json{{"family", family_name(e.fam.id())},
                                       {"constant", e.fam.calibration_constant()},
                                       {"max_rel_dev", worst},
                                       {"ok", ok}});
            }
            doc["entries"] = entries;
            doc["all_ok"] = all_ok;
            emit(o, doc);
        } else if (app.got_subcommand(lemC)) {
            doc["command"] = "lemma-suite";
            json entries = json::array();
            bool all_ok = true;
            for (int i = 0; i <= static_cast<int>(LemmaId::SphereSinCos); ++i) {
                const auto id = static_cast<LemmaId>(i);
                if (lemma_opt != "all" && lemma_opt != lemma_name(id))
                    continue;
                const auto res = lemma_suite(id, lemma_trials, o.seed);
                all_ok = all_ok && res.violations == 0;
                entries.push_back(json{{"lemma", lemma_name(id)},
                                       {"trials", res.trials},
                                       {"violations", res.violations},
                                       {"worst_margin", res.worst_margin}});
            }
            doc["entries"] = entries;
            doc["all_ok"] = all_ok;
            emit(o, doc);
        } else if (app.got_subcommand(fracC)) {
            doc["command"] = "fracint";
            if (frac_mode == "eval-lower" || frac_mode == "eval-upper") {
                const RadialProfile f = parse_profile(space, Side::Ambient, o.profile);
                auto fn = [&](double y) {
                    return f.value_at_distance(space, Side::Ambient, y);
                };
                const double value =
                    frac_mode == "eval-lower"
                        ? rl_lower(frac_alpha, frac_a, fn, frac_x, quad)
                        : rl_upper_inf(frac_alpha, fn, frac_x, quad);
                doc["value"] = value;
                doc["error_estimate"] = o.rel_tol * std::fabs(value);
            } else {
                const FracOperator op = frac_mode == "probe-minus"
                                            ? FracOperator::IHalfMinus_L2
                                            : FracOperator::IHalfPlus_L2;
                std::vector<double> grid;
                if (!grid_text.empty())
                    for (const auto& part : split(grid_text, ','))
                        grid.push_back(std::stod(part));
                else
                    grid = {2, 4, 8, 16, 32, 64};
                const auto res =
                    divergence_probe(op, {blow_a, blow_gamma}, grid, quad);
                doc["values"] = res.values;
                doc["verdict"] = res.verdict == ProbeVerdict::Divergent
                                     ? "divergent"
                                     : res.verdict == ProbeVerdict::Convergent
                                           ? "convergent"
                                           : "inconclusive";
                doc["source_norm"] = res.source_norm;
                doc["source_change"] = res.source_change;
            }
            emit(o, doc);
        }
        return 0;
    } catch (const NonIntegrable& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const TruncationFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const DivergentNorm& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return 2;
    }
}
