#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "grushin/conic.hpp"
#include "grushin/cylinder.hpp"
#include "grushin/errors.hpp"
#include "grushin/flux.hpp"
#include "grushin/oracle.hpp"
#include "grushin/specialfn.hpp"
#include "grushin/sphere.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kHalfPi = 1.57079632679489661923;

using Json = nlohmann::ordered_json;
using grushin::Flux;
using grushin::Rational;
using grushin::parse_flux;
using grushin::usage_error;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct OutputTable {
    std::vector<std::string> headers;
    std::vector<std::vector<Json>> rows;
    std::vector<std::pair<std::string, std::string>> params; // echoed defaults
    std::vector<std::string> notes;
    Json extra; // trailing fit object, if any
};

std::string cell_to_csv(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return fmt_double(v.get<double>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
}

void render(const OutputTable& t, bool as_json, const std::string& command,
            std::ostream& os) {
    if (as_json) {
        Json out;
        Json meta;
        meta["version"] = kVersion;
        meta["command"] = command;
        Json params = Json::object();
        for (const auto& [k, v] : t.params) params[k] = v;
        meta["params"] = params;
        if (!t.notes.empty()) meta["notes"] = t.notes;
        out["meta"] = meta;
        Json rows = Json::array();
        for (const auto& r : t.rows) {
            Json obj = Json::object();
            for (size_t i = 0; i < t.headers.size(); ++i) obj[t.headers[i]] = r[i];
            rows.push_back(std::move(obj));
        }
        out["rows"] = rows;
        if (!t.extra.is_null()) out["fit"] = t.extra;
        os << out.dump(2) << "\n";
        return;
    }
    os << "# grushin " << kVersion << "\n";
    os << "# command: " << command << "\n";
    for (const auto& [k, v] : t.params) os << "# " << k << ": " << v << "\n";
    for (const auto& n : t.notes) os << "# note: " << n << "\n";
    for (size_t i = 0; i < t.headers.size(); ++i)
        os << (i ? "," : "") << t.headers[i];
    os << "\n";
    for (const auto& r : t.rows) {
        for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell_to_csv(r[i]);
        os << "\n";
    }
    if (!t.extra.is_null()) os << t.extra.dump() << "\n";
}

void emit(const OutputTable& t, const std::string& format, const std::string& command,
          const std::string& out_path) {
    const bool as_json = (format == "json");
    if (out_path.empty()) {
        render(t, as_json, command, std::cout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw usage_error("cannot open output file: " + out_path);
    render(t, as_json, command, f);
}

void emit_json(const Json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw usage_error("cannot open output file: " + out_path);
    f << doc.dump(2) << "\n";
}

template <class Indices>
std::string indices_str(const Indices& idxs) {
    std::string s;
    for (size_t i = 0; i < idxs.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(idxs[i].n);
        s += ':';
        s += std::to_string(idxs[i].k);
    }
    return s;
}

std::string join_rationals(const std::vector<Rational>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ';';
        s += v[i].str();
    }
    return s;
}

std::vector<double> linspace(double a, double b, long long points) {
    std::vector<double> x(points);
    for (long long i = 0; i < points; ++i)
        x[i] = a + (b - a) * (double)i / (double)(points - 1);
    return x;
}

struct CommonOpts {
    std::string structure = "cylinder";
    std::string flux = "0";
    bool generic = false;
    std::string format = "csv";
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_structure = true) {
    if (with_structure)
        cmd->add_option("--structure", o.structure, "cylinder or sphere")
            ->check(CLI::IsMember({"cylinder", "sphere"}))
            ->capture_default_str();
    cmd->add_option("--flux", o.flux, "flux b as P, P/Q, or finite decimal")
        ->capture_default_str();
    cmd->add_flag("--generic", o.generic,
                  "treat the flux value as an irrational surrogate");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", o.out, "write output to FILE instead of stdout");
}

void push_common_params(OutputTable& t, const CommonOpts& o, const Flux& b,
                        bool with_structure = true) {
    if (with_structure) t.params.emplace_back("structure", o.structure);
    t.params.emplace_back("flux", b.value.str());
    t.params.emplace_back("generic", o.generic ? "1" : "0");
}

long long sphere_multiplicity_bruteforce(const Flux& b, const Rational& lam) {
    long long count = 0;
    for (long long n = 1; Rational(4 * n * n) <= lam; ++n) {
        const Rational R = lam / Rational(4 * n) - Rational(n);
        if (R < Rational(0)) continue;
        if (b.generic) continue; // k - b never rational for the surrogate
        if ((b.value + R).is_integer()) ++count;
        if (!R.is_zero() && (b.value - R).is_integer()) ++count;
    }
    return count;
}

} // namespace

int main(int argc, char** argv) {
    std::string command = "grushin";
    for (int i = 1; i < argc; ++i) {
        command += ' ';
        command += argv[i];
    }

    CLI::App app{"spectral toolkit for Grushin-type almost-Riemannian structures"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // spectrum
    auto* sp = app.add_subcommand("spectrum", "enumerate the discrete spectrum up to emax");
    CommonOpts sp_o;
    double sp_emax = 0;
    add_common(sp, sp_o);
    sp->add_option("--emax", sp_emax, "energy threshold")->required();
    sp->callback([&] {
        const Flux b = parse_flux(sp_o.flux, sp_o.generic);
        OutputTable t;
        push_common_params(t, sp_o, b);
        t.params.emplace_back("emax", fmt_double(sp_emax));
        t.headers = {"lambda", "multiplicity", "indices"};
        if (sp_o.structure == "cylinder") {
            for (const auto& line : grushin::cylinder::enumerate_spectrum(b, sp_emax))
                t.rows.push_back({line.lambda.str(), line.multiplicity,
                                  indices_str(line.indices)});
        } else {
            for (const auto& line : grushin::sphere::enumerate_spectrum(b, sp_emax))
                t.rows.push_back({line.lambda.str(), line.multiplicity,
                                  indices_str(line.indices)});
        }
        emit(t, sp_o.format, command, sp_o.out);
    });

    // count
    auto* ct = app.add_subcommand("count", "eigenvalue counting function vs Weyl terms");
    CommonOpts ct_o;
    double ct_emax = 0, ct_emin = -1;
    long long ct_samples = 1;
    bool ct_fast = false, ct_fit = false;
    add_common(ct, ct_o);
    ct->add_option("--emax", ct_emax, "largest sampled energy")->required();
    ct->add_option("--emin", ct_emin, "smallest sampled energy (default emax/100)");
    ct->add_option("--samples", ct_samples, "number of log-spaced samples")
        ->capture_default_str();
    ct->add_flag("--fast", ct_fast, "divisor-summatory counting (cylinder, b in Z or Z/2)");
    ct->add_flag("--fit", ct_fit, "append a least-squares a*E*lnE + c*E fit");
    ct->callback([&] {
        const Flux b = parse_flux(ct_o.flux, ct_o.generic);
        if (ct_samples < 1) throw usage_error("--samples must be >= 1");
        if (ct_fast && ct_o.structure != "cylinder")
            throw usage_error("--fast supports the cylinder only");
        double lo = ct_emin > 0 ? ct_emin : ct_emax / 100.0;
        if (ct_samples > 1 && !(lo > 0 && lo < ct_emax))
            throw usage_error("need 0 < emin < emax for multi-sample runs");
        OutputTable t;
        push_common_params(t, ct_o, b);
        t.params.emplace_back("emax", fmt_double(ct_emax));
        t.params.emplace_back("emin", fmt_double(ct_samples > 1 ? lo : ct_emax));
        t.params.emplace_back("samples", std::to_string(ct_samples));
        t.params.emplace_back("fast", ct_fast ? "1" : "0");
        t.headers = {"E", "N_exact", "weyl_leading", "weyl_second", "residual"};
        std::vector<std::pair<double, double>> fitted;
        for (long long i = 0; i < ct_samples; ++i) {
            const double E = ct_samples == 1
                                 ? ct_emax
                                 : lo * std::pow(ct_emax / lo,
                                                 (double)i / (double)(ct_samples - 1));
            long long N;
            grushin::cylinder::WeylReference w{};
            if (ct_o.structure == "cylinder") {
                N = ct_fast ? grushin::cylinder::counting_fast(b, E)
                            : grushin::cylinder::counting_exact(b, E);
                w = grushin::cylinder::weyl_reference(b, E);
            } else {
                N = grushin::sphere::counting_exact(b, E);
                w = grushin::sphere::weyl_reference(b, E);
            }
            const double residual = (double)N - w.leading - w.second;
            t.rows.push_back({E, N, w.leading, w.second, residual});
            fitted.emplace_back(E, (double)N);
        }
        if (ct_fit) {
            const auto fit = grushin::oracle::weyl_fit(fitted);
            t.extra = Json{{"a", fit.a}, {"c", fit.c}, {"rms", fit.rms}};
        }
        emit(t, ct_o.format, command, ct_o.out);
    });

    // degeneracy
    auto* dg = app.add_subcommand("degeneracy", "multiplicity of one level, or a full scan");
    CommonOpts dg_o;
    std::string dg_lambda;
    bool dg_scan = false, dg_nonstrict = false;
    double dg_emax = 0;
    std::string dg_krange = "full";
    add_common(dg, dg_o);
    dg->add_option("--lambda", dg_lambda, "exact eigenvalue as P, P/Q, or decimal");
    dg->add_flag("--scan", dg_scan, "scan all multiplicities below --emax");
    dg->add_option("--emax", dg_emax, "scan threshold");
    dg->add_flag("--nonstrict", dg_nonstrict, "scan lambda <= emax instead of lambda < emax");
    dg->add_option("--krange", dg_krange, "scan modes: full (k in Z) or half (k >= 0)")
        ->check(CLI::IsMember({"full", "half"}))
        ->capture_default_str();
    dg->callback([&] {
        const Flux b = parse_flux(dg_o.flux, dg_o.generic);
        const bool have_lambda = !dg_lambda.empty();
        if (have_lambda == dg_scan)
            throw usage_error("pass exactly one of --lambda / --scan");
        OutputTable t;
        push_common_params(t, dg_o, b);
        if (have_lambda) {
            const Rational lam = parse_flux(dg_lambda).value;
            t.params.emplace_back("lambda", lam.str());
            t.headers = {"lambda", "mult_bruteforce", "mult_divisor_formula", "agreement"};
            long long brute;
            Json formula = "NA", agreement = "NA";
            if (dg_o.structure == "cylinder") {
                brute = grushin::cylinder::multiplicity_bruteforce(b, lam).multiplicity;
                if (b.is_integer() && lam.is_integer() && lam.num() > 0 &&
                    lam.num() % 4 == 0) {
                    const long long f =
                        grushin::cylinder::multiplicity_divisor_formula(lam.num());
                    formula = f;
                    agreement = (f == brute) ? "agree" : "disagree";
                }
            } else {
                brute = sphere_multiplicity_bruteforce(b, lam);
            }
            t.rows.push_back({lam.str(), brute, formula, agreement});
        } else {
            if (dg_o.structure != "sphere")
                throw usage_error("--scan supports the sphere only");
            if (!(dg_emax > 0)) throw usage_error("--scan requires --emax > 0");
            grushin::sphere::ScanOptions opt;
            opt.strict = !dg_nonstrict;
            opt.krange = dg_krange == "half" ? grushin::sphere::KRange::HalfPlane
                                             : grushin::sphere::KRange::FullPlane;
            t.params.emplace_back("emax", fmt_double(dg_emax));
            t.params.emplace_back("strict", opt.strict ? "1" : "0");
            t.params.emplace_back("krange", dg_krange);
            const auto scan = grushin::sphere::multiplicity_scan(b, dg_emax, opt);
            t.headers = {"emax", "total_with_multiplicity", "max_halved_multiplicity",
                         "argmax_lambdas"};
            t.rows.push_back({scan.emax, scan.total_with_multiplicity,
                              scan.max_halved_multiplicity,
                              join_rationals(scan.argmax_lambdas)});
        }
        emit(t, dg_o.format, command, dg_o.out);
    });

    // eigfun
    auto* ef = app.add_subcommand("eigfun", "sample a closed-form radial eigenfunction");
    CommonOpts ef_o;
    long long ef_n = 1, ef_k = 1, ef_points = 1201;
    double ef_xmin = 0.1, ef_xmax = -1;
    add_common(ef, ef_o);
    ef->add_option("--n", ef_n, "radial quantum number (n >= 1)")->required();
    ef->add_option("--k", ef_k, "angular mode")->required();
    ef->add_option("--xmin", ef_xmin, "left end of the sample grid")
        ->capture_default_str();
    ef->add_option("--xmax", ef_xmax, "right end (default 6 cylinder, 1.5 sphere)");
    ef->add_option("--points", ef_points, "number of grid nodes")
        ->capture_default_str();
    ef->callback([&] {
        const Flux b = parse_flux(ef_o.flux, ef_o.generic);
        const bool sphere = ef_o.structure == "sphere";
        const double xmax = ef_xmax > 0 ? ef_xmax : (sphere ? 1.5 : 6.0);
        if (!(0 < ef_xmin && ef_xmin < xmax))
            throw usage_error("need 0 < xmin < xmax");
        if (sphere && xmax >= kHalfPi)
            throw usage_error("sphere grid must end below pi/2");
        if (ef_points < 2) throw usage_error("--points must be >= 2");
        const auto nodes = linspace(ef_xmin, xmax, ef_points);
        OutputTable t;
        push_common_params(t, ef_o, b);
        t.params.emplace_back("n", std::to_string(ef_n));
        t.params.emplace_back("k", std::to_string(ef_k));
        t.params.emplace_back("xmin", fmt_double(ef_xmin));
        t.params.emplace_back("xmax", fmt_double(xmax));
        t.params.emplace_back("points", std::to_string(ef_points));
        grushin::cylinder::EigenfunctionSample s;
        Rational lam;
        if (sphere) {
            lam = grushin::sphere::eigenvalue(b, {ef_n, ef_k});
            s = grushin::sphere::eigenfunction_radial(b, {ef_n, ef_k}, nodes);
        } else {
            lam = grushin::cylinder::eigenvalue(b, {ef_n, ef_k});
            s = grushin::cylinder::eigenfunction_radial(b, {ef_n, ef_k}, nodes);
        }
        t.params.emplace_back("lambda", lam.str());
        t.params.emplace_back("k_phase", std::to_string(s.k_phase));
        t.headers = {"x", "value"};
        for (size_t i = 0; i < s.x_nodes.size(); ++i)
            t.rows.push_back({s.x_nodes[i], s.values[i]});
        emit(t, ef_o.format, command, ef_o.out);
    });

    // limit
    auto* lm = app.add_subcommand(
        "limit", "degeneration of eigenfunctions toward the generalized one");
    CommonOpts lm_o;
    std::string lm_lambda;
    long long lm_k = 0;
    std::vector<long long> lm_js;
    double lm_xmax = 6.0;
    long long lm_points = 1201;
    add_common(lm, lm_o, /*with_structure=*/false);
    lm->add_option("--lambda", lm_lambda, "target energy, exact rational")->required();
    lm->add_option("--k", lm_k, "angular mode")->capture_default_str();
    lm->add_option("--j", lm_js, "sequence indices j >= 1")->required()->expected(-1);
    lm->add_option("--xmax", lm_xmax, "right end of the sup grid")->capture_default_str();
    lm->add_option("--points", lm_points, "sup grid nodes")->capture_default_str();
    lm->callback([&] {
        const Rational lam = parse_flux(lm_lambda).value;
        if (!(lam > Rational(0))) throw usage_error("lambda must be positive");
        OutputTable t;
        t.params.emplace_back("lambda", lam.str());
        t.params.emplace_back("k", std::to_string(lm_k));
        t.params.emplace_back("xmax", fmt_double(lm_xmax));
        t.params.emplace_back("points", std::to_string(lm_points));
        t.headers = {"j", "b_j", "n_j", "sup_error"};
        for (long long j : lm_js) {
            if (j < 1) throw usage_error("j indices must be >= 1");
            const auto pair = grushin::cylinder::degeneration_pair(lam, lm_k, j);
            const double err = grushin::cylinder::degeneration_sup_error(
                lam, lm_k, j, lm_xmax, (int)lm_points);
            t.rows.push_back({j, pair.b_j.value.str(), pair.n_j, err});
        }
        emit(t, lm_o.format, command, lm_o.out);
    });

    // classify
    auto* cl = app.add_subcommand("classify",
                                  "self-adjointness and spectral type of the conic family");
    double cl_alpha = 1.0;
    std::string cl_flux = "0", cl_out;
    bool cl_generic = false;
    long long cl_kmin = -20, cl_kmax = 20;
    cl->add_option("--alpha", cl_alpha, "metric exponent")->required();
    cl->add_option("--flux", cl_flux, "flux b as P, P/Q, or finite decimal")
        ->capture_default_str();
    cl->add_flag("--generic", cl_generic, "treat the flux value as an irrational surrogate");
    cl->add_option("--kmin", cl_kmin, "lowest reported mode")->capture_default_str();
    cl->add_option("--kmax", cl_kmax, "highest reported mode")->capture_default_str();
    cl->add_option("--out", cl_out, "write output to FILE instead of stdout");
    cl->callback([&] {
        const Flux b = parse_flux(cl_flux, cl_generic);
        const auto rec = grushin::conic::classify(cl_alpha, b, cl_kmin, cl_kmax);
        Json out;
        Json meta;
        meta["version"] = kVersion;
        meta["command"] = command;
        out["meta"] = meta;
        out["alpha"] = cl_alpha;
        out["flux"] = b.value.str();
        out["generic"] = b.generic;
        out["full_operator_esa"] = rec.full_operator_esa;
        Json verdicts = Json::object();
        for (const auto& [k, esa] : rec.mode_verdicts)
            verdicts[std::to_string(k)] = esa;
        out["mode_verdicts"] = verdicts;
        out["spectral_type"] = grushin::conic::spectral_type_name(rec.spectral_type);
        out["notes"] = rec.notes;
        emit_json(out, cl_out);
    });

    // verify
    auto* vf = app.add_subcommand("verify",
                                  "finite-difference check of the closed-form spectrum");
    CommonOpts vf_o;
    long long vf_k = 1, vf_modes = 5, vf_points = 20001;
    double vf_left = -1, vf_right = -1, vf_tol = -1;
    add_common(vf, vf_o);
    vf->add_option("--k", vf_k, "angular mode")->required();
    vf->add_option("--modes", vf_modes, "number of eigenvalues to compare")
        ->capture_default_str();
    vf->add_option("--left", vf_left, "left truncation (default 1e-4 cylinder, 1e-3 sphere)");
    vf->add_option("--right", vf_right, "right truncation (default 30 cylinder, pi/2 - 1e-3 sphere)");
    vf->add_option("--points", vf_points, "grid nodes")->capture_default_str();
    vf->add_option("--tol", vf_tol, "relative tolerance (default 0.005 cylinder, 0.01 sphere)");
    vf->callback([&] {
        const Flux b = parse_flux(vf_o.flux, vf_o.generic);
        const bool sphere = vf_o.structure == "sphere";
        const double kappa = (Rational(vf_k) - b.value).abs().to_double();
        if (!sphere && kappa == 0.0)
            throw usage_error("mode k = b is excluded on the cylinder");
        grushin::oracle::Grid1D grid;
        grid.left = vf_left > 0 ? vf_left : (sphere ? 1e-3 : 1e-4);
        grid.right = vf_right > 0 ? vf_right : (sphere ? kHalfPi - 1e-3 : 30.0);
        grid.points = vf_points;
        const double tol = vf_tol > 0 ? vf_tol : (sphere ? 0.01 : 0.005);
        OutputTable t;
        push_common_params(t, vf_o, b);
        t.params.emplace_back("k", std::to_string(vf_k));
        t.params.emplace_back("kappa", fmt_double(kappa));
        t.params.emplace_back("modes", std::to_string(vf_modes));
        t.params.emplace_back("left", fmt_double(grid.left));
        t.params.emplace_back("right", fmt_double(grid.right));
        t.params.emplace_back("points", std::to_string(vf_points));
        t.params.emplace_back("tol", fmt_double(tol));
        if (sphere && kappa == 0.0)
            t.notes.push_back(
                "kappa = 0 meets the coordinate singularity at pi/2: the Dirichlet "
                "truncation there converges slowly, and the error is dominated by "
                "the choice of the right-end offset rather than by the grid spacing");
        const auto fd = sphere
                            ? grushin::oracle::fd_eigs_sphere_mode(kappa, grid, (int)vf_modes)
                            : grushin::oracle::fd_eigs_cylinder_mode(kappa, grid, (int)vf_modes);
        t.headers = {"n", "lambda_closed_form", "lambda_fd", "relative_error"};
        bool breach = false;
        for (long long n = 1; n <= vf_modes; ++n) {
            const double closed = sphere ? 4.0 * n * (n + kappa) : 4.0 * n * kappa;
            const double got = fd.eigenvalues[n - 1];
            const double rel = std::fabs(got - closed) / closed;
            if (rel > tol) breach = true;
            t.rows.push_back({n, closed, got, rel});
        }
        emit(t, vf_o.format, command, vf_o.out);
        if (breach)
            throw grushin::numeric_error("relative error above tolerance " + fmt_double(tol));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const grushin::usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const grushin::numeric_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
