#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <random>

#include "nccover/algebra.hpp"
#include "nccover/circle.hpp"
#include "nccover/connections.hpp"
#include "nccover/dixmier.hpp"
#include "nccover/frames.hpp"
#include "nccover/torus.hpp"

namespace nccover::cli {

namespace {

int geti(const json& p, const char* key) { return p.at(key).get<int>(); }
long getl(const json& p, const char* key) { return p.at(key).get<long>(); }
double getd(const json& p, const char* key) { return p.at(key).get<double>(); }
std::string gets(const json& p, const char* key) { return p.at(key).get<std::string>(); }

Param num(const std::string& name, json fallback, double lo, double hi, const std::string& help) {
    return {name, std::move(fallback), lo, hi, {}, help};
}

Param pick(const std::string& name, const std::string& fallback, std::vector<std::string> choices,
           const std::string& help) {
    return {name, fallback, 0.0, 0.0, std::move(choices), help};
}

Param text(const std::string& name, const std::string& fallback, const std::string& help) {
    return {name, fallback, 0.0, 0.0, {}, help};
}

const std::vector<std::string> kGroups{"Z2", "Z3", "Z4", "Z6", "Z2xZ2", "Z2xZ3"};

MultTable group_table(const std::string& name) {
    if (name == "Z2xZ2") return product_table(cyclic_table(2), cyclic_table(2));
    if (name == "Z2xZ3") return product_table(cyclic_table(2), cyclic_table(3));
    return cyclic_table(std::stoi(name.substr(1)));
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json estimate_json(const DixmierEstimate& e) {
    return {{"slope", e.slope},
            {"stderr", e.stderr_},
            {"intercept", e.intercept},
            {"window", json::array({e.window.first, e.window.second})},
            {"tau_tail", e.tau_final},
            {"tau_oscillation", e.tau_oscillation},
            {"lower_half_slope", e.lower_half_slope},
            {"upper_half_slope", e.upper_half_slope}};
}

Series sigma_curve(const SingularSeries& s) {
    Series out{"sigma", {"N", "log_N", "sigma_N"}, {}};
    const long n = s.size();
    if (n == 0) return out;
    long last = 0;
    for (int k = 0; k < 200; ++k) {
        const long m = std::lround(std::exp(std::log(static_cast<double>(n)) * k / 199.0));
        if (m <= last) continue;
        last = m;
        out.rows.push_back({static_cast<double>(m), std::log(static_cast<double>(m)), s.cutoff_sum(m)});
    }
    return out;
}

Series tau_curve(const DixmierEstimate& e) {
    Series out{"tau", {"lambda", "tau"}, {}};
    for (const auto& [lam, t] : e.tau_curve) out.rows.push_back({lam, t});
    return out;
}

Series spectrum_series(const std::vector<double>& values) {
    Series out{"spectrum", {"k", "eigenvalue"}, {}};
    std::vector<double> v = values;
    std::sort(v.begin(), v.end());
    for (size_t k = 0; k < v.size(); ++k) out.rows.push_back({static_cast<double>(k), v[k]});
    return out;
}

struct Verdicted {
    DixmierEstimate est;
    bool divergent = true;
};

Verdicted estimate(const SingularSeries& s) {
    try {
        return {nc_integral(s), true};
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotLogDivergent) throw;
        return {log_regression(s), false};
    }
}

double rel_err(double value, double expected) { return std::abs(value - expected) / std::abs(expected); }

// ---------------------------------------------------------------------------------------------

Outcome run_bumps(const json& p, std::uint64_t) {
    Outcome o;
    const BumpPair b = make_bumps(geti(p, "grid"));
    const double r = partition_residual(b);
    o.results["partition_residual"] = r;
    o.results["max_fd_derivative"] = std::max(max_fd_derivative(b.b1), max_fd_derivative(b.b2));
    o.results["overlap_half_angle"] = bump_overlap_angle();
    o.check("partition", r <= getd(p, "tol"));
    Series s{"bumps", {"phi", "b1", "b2"}, {}};
    for (int k = 0; k < b.b1.n; ++k)
        s.rows.push_back({b.b1.angle(k), b.b1.samples[k].real(), b.b2.samples[k].real()});
    o.series.push_back(std::move(s));
    return o;
}

Outcome run_line_partition(const json& p, std::uint64_t) {
    Outcome o;
    const int grid = geti(p, "grid"), window = geti(p, "window");
    const BumpPair b = make_bumps(grid);
    const double r = check_line_partition(b, window);
    o.results["translate_sum_residual"] = r;
    const RiggedFrameReport f = check_line_frame(grid, window, getd(p, "frame_tol"));
    o.results["frame"] = report_to_json(f);
    o.check("partition", r <= getd(p, "tol"));
    o.check("frame", f.pass);
    const LineFunction l = lift_to_line(b.b1, 0, window);
    Series s{"lifted_bump", {"x", "value"}, {}};
    for (int j = 0; j < l.size(); ++j) s.rows.push_back({l.position(j), l.samples[j].real()});
    o.series.push_back(std::move(s));
    return o;
}

Outcome run_circle_cover(const json& p, std::uint64_t) {
    Outcome o;
    const double r = cover_partition_residual(geti(p, "sheets"), geti(p, "grid"));
    o.results["cover_partition_residual"] = r;
    o.check("partition", r <= getd(p, "tol"));
    return o;
}

Outcome run_torus_cover(const json& p, std::uint64_t) {
    Outcome o;
    const int m = geti(p, "m"), n = geti(p, "n"), q = geti(p, "q");
    if (static_cast<long>(q) * m * n > 60)
        throw Error(ErrorCode::ConfigInvalid, "q m n must not exceed 60 (cover matrix size)");
    const std::string kind_name = gets(p, "frame");
    TorusFrameKind kind = TorusFrameKind::Hybrid;
    if (kind_name == "spectral") kind = TorusFrameKind::Spectral;
    if (kind_name == "bump-product") kind = TorusFrameKind::BumpProduct;
    const TorusCover c = torus_cover(m, n, geti(p, "k"), geti(p, "p"), q, kind);
    const RiggedFrameReport f = check_frame(c.frame, getd(p, "tol"));
    o.results["theta"] = c.theta;
    o.results["theta_prime"] = c.theta_prime;
    o.results["p_prime"] = c.p_prime;
    o.results["q_prime"] = c.q_prime;
    o.results["relation_residual"] = c.relation_residual;
    o.results["action_residual"] = c.action_residual;
    o.results["fixed_dim"] = c.fixed_dim;
    o.results["base_dim"] = c.base_dim;
    o.results["combined_rank"] = c.combined_rank;
    o.results["frame"] = report_to_json(f);
    o.check("relation", c.relation_residual <= 1e-10);
    o.check("action", c.action_residual <= 1e-10);
    o.check("fixed_recovers_base", c.fixed_dim == c.base_dim && c.combined_rank == c.base_dim);
    o.check("frame", f.pass);
    return o;
}

Outcome run_torus_area(const json& p, std::uint64_t) {
    Outcome o;
    const cplx t(getd(p, "tau_re"), getd(p, "tau_im"));
    if (t.imag() <= 0.0) throw Error(ErrorCode::ConfigInvalid, "tau_im must be positive");
    const SingularSeries s = torus_series(t, geti(p, "cutoff"), 2);
    const DixmierEstimate e = nc_integral(s);
    const double value = 2.0 * kPi * e.slope, expected = 1.0 / t.imag();
    o.results["terms"] = s.size();
    o.results["estimate"] = estimate_json(e);
    o.results["two_pi_slope"] = value;
    o.results["expected"] = expected;
    o.results["rel_error"] = rel_err(value, expected);
    o.check("area", rel_err(value, expected) <= getd(p, "rel_tol"));
    o.series.push_back(sigma_curve(s));
    o.series.push_back(tau_curve(e));
    return o;
}

json solution_json(const GaloisSolution& s, const CanonicalMapReport& r) {
    return {{"verdict", verdict_name(s.verdict)},
            {"pairs", s.pairs.size()},
            {"residual_unit", s.residual_unit},
            {"residual_orth", s.residual_orth},
            {"lsq_residual", s.lsq_residual},
            {"bijective", r.bijective},
            {"rank", r.rank},
            {"domain_dim", r.domain_dim},
            {"codomain_dim", r.codomain_dim},
            {"well_defined_residual", r.well_defined_residual}};
}

Outcome run_galois_check(const json& p, std::uint64_t seed) {
    Outcome o;
    const std::string mode = gets(p, "mode");
    const double tol = getd(p, "tol");
    auto single = [&](const StarAlgebra& a, const GroupAction& g, Verdict expected) {
        o.results["action_residual"] = validate_action(a, g);
        const GaloisSolution s = solve_canonical(a, g);
        const CanonicalMapReport r = canonical_map_matrix(a, g);
        o.results["solution"] = solution_json(s, r);
        o.results["expected_verdict"] = verdict_name(expected);
        o.check("verdict", s.verdict == expected);
        o.check("agreement", (s.verdict == Verdict::Success) == r.bijective);
        if (expected == Verdict::Success)
            o.check("residual", std::max(s.residual_unit, s.residual_orth) <= tol);
    };
    if (mode == "boring") {
        const MultTable table = group_table(gets(p, "group"));
        const StarAlgebra a = StarAlgebra::full_matrix(geti(p, "base_dim"));
        const BoringCover bc = boring_cover(a, table);
        single(bc.cover, bc.action, Verdict::Success);
        const RiggedFrameReport f = check_frame(boring_frame(a, table), tol);
        o.results["frame"] = report_to_json(f);
        o.check("frame", f.pass);
    } else if (mode == "z2-conjugation") {
        const StarAlgebra a = StarAlgebra::full_matrix(2);
        Mat w = Mat::Identity(2, 2);
        w(1, 1) = -1.0;
        single(a, action_from_unitaries(a, cyclic_table(2), 0, {Mat::Identity(2, 2), w}), Verdict::Success);
    } else if (mode == "trivial") {
        const StarAlgebra a = StarAlgebra::full_matrix(1);
        const Mat one = Mat::Identity(1, 1);
        single(a, action_from_unitaries(a, cyclic_table(2), 0, {one, one}), Verdict::Infeasible);
    } else {
        const std::string group = gets(p, "group");
        if (group.find('x') != std::string::npos)
            throw Error(ErrorCode::ConfigInvalid, "random mode samples cyclic groups only");
        const int order = std::stoi(group.substr(1));
        std::mt19937_64 rng(seed);
        int agree = 0, oracle = 0, galois = 0;
        const int trials = geti(p, "trials");
        json failures = json::array();
        for (int t = 0; t < trials; ++t) {
            const SampledAction s = sample_cyclic_action(order, rng);
            const GaloisSolution sol = solve_canonical(s.algebra, s.action);
            const CanonicalMapReport r = canonical_map_matrix(s.algebra, s.action);
            const bool ok = sol.verdict == Verdict::Success;
            agree += ok == r.bijective;
            oracle += ok == s.galois;
            galois += s.galois;
            if (ok != r.bijective || ok != s.galois)
                failures.push_back({{"trial", t}, {"action", s.description}, {"verdict", verdict_name(sol.verdict)},
                                    {"bijective", r.bijective}});
        }
        o.results["trials"] = trials;
        o.results["galois_instances"] = galois;
        o.results["solver_rank_agreement"] = agree;
        o.results["solver_oracle_agreement"] = oracle;
        o.results["disagreements"] = failures;
        o.check("agreement", agree == trials);
        o.check("oracle", oracle == trials);
    }
    return o;
}

Outcome run_vn_orth(const json& p, std::uint64_t seed) {
    Outcome o;
    std::mt19937_64 rng(seed);
    double sum = 0.0, orth = 0.0, dom = 0.0;
    for (int t = 0; t < geti(p, "trials"); ++t) {
        const OrthogonalizedFamily f =
            vn_orthogonalize(random_commuting_partition(geti(p, "dim"), geti(p, "count"), rng));
        sum = std::max(sum, f.residual_sum);
        orth = std::max(orth, f.residual_orth);
        dom = std::max(dom, f.residual_domination);
    }
    const double tol = getd(p, "tol");
    o.results["residual_sum"] = sum;
    o.results["residual_orth"] = orth;
    o.results["residual_domination"] = dom;
    o.check("sum", sum <= tol);
    o.check("orthogonal", orth <= tol);
    o.check("domination", dom <= tol);
    return o;
}

// Sum of `parts` homogeneous operators on the mode space with random degrees in [-2, 2]^2.
Mat random_homogeneous(const ModeSpace& space, int parts, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> deg(-2, 2);
    std::normal_distribution<double> gauss;
    Mat m = Mat::Zero(space.dim(), space.dim());
    for (int k = 0; k < parts; ++k) {
        const int d1 = deg(rng), d2 = deg(rng);
        for (int j = 0; j < space.dim(); ++j) {
            auto [a, b] = space.mode(j);
            if (std::abs(a + d1) > space.modes || std::abs(b + d2) > space.modes) continue;
            m(space.index(a + d1, b + d2), j) += cplx(gauss(rng), gauss(rng)) / static_cast<double>(parts);
        }
    }
    return m;
}

Outcome run_star_check(const json& p, std::uint64_t seed) {
    Outcome o;
    const ModeSpace space{geti(p, "modes")};
    const double theta = getd(p, "theta");
    const int parts = geti(p, "parts");
    std::mt19937_64 rng(seed);
    const Mat p1 = grading_operator(space, 0), p2 = grading_operator(space, 1);
    double twist = 0.0, assoc = 0.0, grading = 0.0;
    for (int t = 0; t < geti(p, "pairs"); ++t) {
        const auto x = homogeneous_parts(random_homogeneous(space, parts, rng), space);
        const auto y = homogeneous_parts(random_homogeneous(space, parts, rng), space);
        for (const auto& [d, xn] : x)
            grading = std::max({grading, (p1 * xn - xn * p1 - static_cast<double>(d.first) * xn).norm(),
                                (p2 * xn - xn * p2 - static_cast<double>(d.second) * xn).norm()});
        twist = std::max(twist, (left_twist(x, space, theta) * left_twist(y, space, theta) -
                                 left_twist(star_product(x, y, theta), space, theta)).norm());
    }
    for (int t = 0; t < geti(p, "triples"); ++t) {
        const auto x = homogeneous_parts(random_homogeneous(space, parts, rng), space);
        const auto y = homogeneous_parts(random_homogeneous(space, parts, rng), space);
        const auto z = homogeneous_parts(random_homogeneous(space, parts, rng), space);
        assoc = std::max(assoc, bigraded_distance(star_product(star_product(x, y, theta), z, theta),
                                                  star_product(x, star_product(y, z, theta), theta)));
    }
    // Frobenius norms throughout: an upper bound on the operator norm.
    o.results["twist_residual"] = twist;
    o.results["associativity_residual"] = assoc;
    o.results["grading_residual"] = grading;
    o.check("twist", twist <= getd(p, "tol"));
    o.check("associativity", assoc <= getd(p, "assoc_tol"));
    o.check("grading", grading <= getd(p, "assoc_tol"));
    return o;
}

Outcome run_connection_check(const json& p, std::uint64_t seed) {
    Outcome o;
    std::mt19937_64 rng(seed);
    const int max_dim = geti(p, "max_dim");
    const Rep rep = [](const Mat& x) { return x; };
    double leibniz = 0.0, free_defect = 0.0, proj = 0.0;
    for (int t = 0; t < geti(p, "instances"); ++t) {
        const int d = std::uniform_int_distribution<int>(1, std::max(1, max_dim / 2))(rng);
        const int k = std::uniform_int_distribution<int>(1, std::max(1, max_dim / d))(rng);
        const int r = std::uniform_int_distribution<int>(1, k * d)(rng);
        const Mat iso = random_unitary(k * d, rng).leftCols(r);
        const Mat big = iso * iso.adjoint();
        FramedModule m;
        m.rank = k;
        m.p.assign(k, std::vector<Mat>(k));
        for (int j = 0; j < k; ++j)
            for (int l = 0; l < k; ++l) m.p[j][l] = big.block(j * d, l * d, d, d);
        proj = std::max(proj, m.projection_defect());
        std::vector<Mat> raw;
        for (int j = 0; j < k; ++j) raw.push_back(random_matrix(d, d, rng));
        const auto xi = m.project(raw);
        const Mat a = random_matrix(d, d, rng);
        const Mat dirac = random_hermitian(d, rng);
        leibniz = std::max(leibniz, leibniz_residual(m, xi, a, dirac, rep));
        const FramedModule f = free_module(k, d);
        const auto nabla = grassmann_connection(f, raw);
        for (int j = 0; j < k; ++j)
            free_defect = std::max(free_defect, op_norm(represent_form(nabla[j], dirac, rep) -
                                                        represent_form(nccover::d(raw[j]), dirac, rep)));
    }
    o.results["leibniz_residual"] = leibniz;
    o.results["free_module_defect"] = free_defect;
    o.results["projection_defect"] = proj;
    o.check("leibniz", leibniz <= getd(p, "tol"));
    o.check("free_module", free_defect == 0.0);
    return o;
}

Outcome run_dirac_lift(const json& p, std::uint64_t seed) {
    Outcome o;
    const int q = geti(p, "base_dim");
    const double tol = getd(p, "tol");
    const Mat dirac = circle_dirac(q);
    const Rep rep = [q](const Mat& x) { return Mat(x.topLeftCorner(q, q)); };
    if (gets(p, "mode") == "boring") {
        const MultTable table = group_table(gets(p, "group"));
        const GaloisFrame f = boring_frame(StarAlgebra::diagonal(q), table);
        const LiftedDirac l = dirac_lift(f, dirac, rep, q);
        std::vector<double> expected;
        const HermEig base = herm_eig(dirac);
        for (Eigen::Index k = 0; k < base.values.size(); ++k)
            for (size_t g = 0; g < table.size(); ++g) expected.push_back(base.values(k));
        std::sort(expected.begin(), expected.end());
        double spec = expected.size() == l.spectrum.size() ? 0.0 : std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < std::min(expected.size(), l.spectrum.size()); ++k)
            spec = std::max(spec, std::abs(expected[k] - l.spectrum[k]));
        o.results["lifted_dim"] = l.spectrum.size();
        o.results["equivariance"] = l.equivariance;
        o.results["max_commutator"] = l.max_commutator;
        o.results["spectrum_residual"] = spec;
        o.check("equivariance", l.equivariance <= tol);
        o.check("spectrum", spec <= tol);
        o.series.push_back(spectrum_series(l.spectrum));
    } else {
        const int n = geti(p, "sheets");
        const RootExtension ext = root_extension(circle_clock(q), n);
        const LiftedDirac l = dirac_lift(ext.frame, dirac, rep, q);
        Mat x = Mat::Zero(ext.frame.ambient, ext.frame.ambient);
        for (size_t i = 0; i < ext.frame.e.size(); ++i) x += ext.frame.e[i].adjoint() * ext.frame.xi[i];
        const auto flat = flat_sites(ext.frame, rep, x, 1);
        Mat chi = Mat::Zero(q, q);
        for (int k : flat) chi(k, k) = 1.0;
        std::mt19937_64 rng(seed);
        const Vec h = random_matrix(q, 1, rng).col(0);
        const double loc = locality_residual(ext.frame, rep, dirac, x, h, kron(Mat::Identity(n, n), chi));
        const double whole =
            locality_residual(ext.frame, rep, dirac, x, h, Mat::Identity(ext.frame.ambient, ext.frame.ambient));
        o.results["lifted_dim"] = l.spectrum.size();
        o.results["equivariance"] = l.equivariance;
        o.results["max_commutator"] = l.max_commutator;
        o.results["flat_sites"] = flat.size();
        o.results["locality_residual"] = loc;
        o.results["unrestricted_residual"] = whole;
        o.check("equivariance", l.equivariance <= tol);
        o.check("flat_region", !flat.empty());
        o.check("locality", loc <= tol);
        o.series.push_back(spectrum_series(l.spectrum));
    }
    return o;
}

// Worst violation of sigma_l(A) + sigma_m(B) <= sigma_{l+m}(A+B) and of
// sigma_l(A+B) <= sigma_l(A) + sigma_l(B) <= sigma_{2l}(A+B), relative to sigma_total(A+B).
std::pair<double, double> norm_inequalities(const Mat& a, const Mat& b) {
    const SingularSeries sa = series_of_matrix(a), sb = series_of_matrix(b), sab = series_of_matrix(a + b);
    const long n = sab.size();
    const double scale = std::max(1.0, sab.cutoff_sum(n));
    double reverse = 0.0, sandwich = 0.0;
    for (long l = 0; l <= n; ++l) {
        for (long m = 0; m <= n; ++m)
            reverse = std::max(reverse, sa.cutoff_sum(l) + sb.cutoff_sum(m) - sab.cutoff_sum(l + m));
        const double mid = sa.cutoff_sum(l) + sb.cutoff_sum(l);
        sandwich = std::max({sandwich, sab.cutoff_sum(l) - mid, mid - sab.cutoff_sum(2 * l)});
    }
    return {reverse / scale, sandwich / scale};
}

Outcome run_dixmier(const json& p, std::uint64_t seed) {
    Outcome o;
    const std::string kind = gets(p, "series");
    const long n_max = getl(p, "n_max");
    if (kind == "matrix") {
        std::mt19937_64 rng(seed);
        const int dim = geti(p, "dim");
        double reverse = 0.0, sandwich = 0.0;
        for (int t = 0; t < geti(p, "pairs"); ++t) {
            const Mat x = random_matrix(dim, dim, rng), y = random_matrix(dim, dim, rng);
            auto [r, s] = norm_inequalities(x * x.adjoint() / dim, y * y.adjoint() / dim);
            reverse = std::max(reverse, r);
            sandwich = std::max(sandwich, s);
        }
        o.results["reverse_triangle_violation"] = reverse;
        o.results["sandwich_violation"] = sandwich;
        o.check("reverse_triangle", reverse <= getd(p, "slack"));
        o.check("sandwich", sandwich <= getd(p, "slack"));
        return o;
    }
    SingularSeries s;
    if (kind == "circle" || kind == "lift") {
        s = circle_series(n_max);
    } else if (kind == "harmonic") {
        s = harmonic_series(getd(p, "c"), n_max);
    } else if (kind == "torus") {
        s = torus_series(cplx(getd(p, "tau_re"), getd(p, "tau_im")), geti(p, "cutoff"), 2);
    } else if (kind == "trace-class") {
        std::vector<double> v(n_max);
        for (long k = 0; k < n_max; ++k) v[k] = std::ldexp(1.0, -static_cast<int>(std::min<long>(k, 2000)));
        s = SingularSeries(std::move(v), "geometric");
    } else {
        const std::string path = gets(p, "input");
        if (path.empty()) throw Error(ErrorCode::ConfigInvalid, "series csv needs --input");
        std::vector<double> v;
        for (const auto& row : read_csv(path)) {
            if (row.size() < 2) throw Error(ErrorCode::ConfigInvalid, "csv rows must be (k, mu_k)");
            v.push_back(row[1]);
        }
        s = SingularSeries(std::move(v), "csv");
    }
    const Verdicted base = estimate(s);
    o.results["terms"] = s.size();
    o.results["provenance"] = s.provenance();
    o.results["estimate"] = estimate_json(base.est);
    o.results["verdict"] = base.divergent ? "log-divergent" : "not-log-divergent";
    if (kind == "circle") {
        o.results["circumference"] = kPi * base.est.slope;
        o.check("slope", base.divergent && rel_err(base.est.slope, 2.0) <= 0.005);
        o.check("tau", rel_err(base.est.tau_final, 2.0) <= 0.10);
    } else if (kind == "harmonic") {
        o.check("slope", base.divergent && rel_err(base.est.slope, getd(p, "c")) <= 0.005);
    } else if (kind == "torus") {
        const double v = 2.0 * kPi * base.est.slope, expected = 1.0 / std::abs(getd(p, "tau_im"));
        o.results["two_pi_slope"] = v;
        o.check("area", base.divergent && rel_err(v, expected) <= 0.02);
    } else if (kind == "trace-class") {
        o.check("verdict", !base.divergent);
    } else if (kind == "lift") {
        const int g = geti(p, "group_order");
        const SingularSeries lifted = lift_series(s, g);
        const Verdicted up = estimate(lifted);
        double block = 0.0;
        for (long m = 1; m <= s.size(); m = m < 16 ? m + 1 : m * 2)
            block = std::max(block, rel_err(lifted.cutoff_sum(g * m), g * s.cutoff_sum(m)));
        o.results["lifted_estimate"] = estimate_json(up.est);
        o.results["slope_ratio"] = up.est.slope / base.est.slope;
        o.results["block_identity_residual"] = block;
        o.check("scaling", up.divergent && rel_err(up.est.slope / base.est.slope, g) <= 0.02);
        o.check("block_identity", block <= 1e-12);
        o.series.push_back(sigma_curve(lifted));
        o.series.back().name = "lifted_sigma";
    } else {
        o.check("series", s.size() > 0);
    }
    o.series.push_back(sigma_curve(s));
    o.series.push_back(tau_curve(base.est));
    return o;
}

Outcome run_root_extension(const json& p, std::uint64_t seed) {
    Outcome o;
    const int q = geti(p, "base_dim"), n = geti(p, "n");
    if (q * n > 128) throw Error(ErrorCode::ConfigInvalid, "base_dim * n must not exceed 128");
    std::mt19937_64 rng(seed);
    const Mat w = random_unitary(q, rng);
    const Mat u = w * circle_clock(q) * w.adjoint();
    const RootExtension ext = root_extension(u, n);
    const RiggedFrameReport f = check_frame(ext.frame, getd(p, "tol"));
    o.results["root_residual"] = ext.root_residual;
    o.results["base_dim"] = ext.base.dim();
    o.results["cover_dim"] = ext.cover.dim();
    o.results["frame"] = report_to_json(f);
    o.check("root", ext.root_residual <= 1e-10);
    o.check("frame", f.pass);
    return o;
}

Outcome run_mapping_cone(const json& p, std::uint64_t) {
    Outcome o;
    const MappingCone c = mapping_cone_cover(geti(p, "n"), geti(p, "t_grid"), geti(p, "q"));
    const RiggedFrameReport f = check_frame(c.extension.frame, getd(p, "tol"));
    o.results["v_membership"] = c.v_membership;
    o.results["vn_membership"] = c.vn_membership;
    o.results["fiber0_residual"] = c.fiber0_residual;
    o.results["base_dim"] = c.base.dim();
    o.results["frame"] = report_to_json(f);
    o.check("root_outside_base", c.v_membership > 1e-3);
    o.check("power_in_base", c.vn_membership <= 1e-9);
    o.check("fiber0", c.fiber0_residual <= 1e-9);
    o.check("frame", f.pass);
    return o;
}

Outcome run_su2(const json& p, std::uint64_t) {
    Outcome o;
    const Su2Report r = su2_disconnect(geti(p, "n"), geti(p, "grid"));
    o.results["subordinated_dim"] = r.subordinated_dim;
    o.results["central_blocks"] = r.central_blocks;
    o.results["label_groups"] = r.label_groups;
    json labels = json::array();
    for (cplx z : r.labels) labels.push_back(complex_json(z));
    o.results["labels"] = labels;
    o.results["frame"] = report_to_json(r.frame_report);
    o.check("frame", r.frame_report.pass);
    o.check("label_groups", r.label_groups == r.n);
    o.check("labels", r.labels_match);
    return o;
}

}  // namespace

const std::vector<Experiment>& experiments() {
    static const std::vector<Experiment> all = {
        {"bumps", "Two-bump partition of unity on the circle",
         {num("grid", 4096, 16, 1 << 20, "grid points on the circle"),
          num("tol", 1e-12, 0.0, 1.0, "tolerance on b1^2 + b2^2 - 1")},
         {{"smoke", {{"grid", 1024}}}},
         run_bumps},
        {"line-partition", "Translates of the lifted bumps partition unity on the line",
         {num("grid", 1024, 16, 65536, "points per period"), num("window", 3, 1, 16, "window W"),
          num("tol", 1e-12, 0.0, 1.0, "translate-sum tolerance"),
          num("frame_tol", 1e-8, 0.0, 1.0, "frame residual tolerance")},
         {{"smoke", {{"grid", 256}}}},
         run_line_partition},
        {"circle-cover", "Lifted bumps on the n-fold circle cover",
         {num("sheets", 3, 1, 16, "number of sheets n"), num("grid", 4096, 16, 1 << 20, "grid points"),
          num("tol", 1e-12, 0.0, 1.0, "partition tolerance")},
         {{"smoke", {{"grid", 1024}}}},
         run_circle_cover},
        {"torus-cover", "Finite Z_m x Z_n cover of a rational noncommutative torus",
         {num("m", 2, 1, 4, "order of the first cyclic factor"), num("n", 3, 1, 4, "order of the second"),
          num("k", 1, -8, 8, "branch shift k"), num("p", 2, -1000, 1000, "theta numerator"),
          num("q", 5, 1, 60, "theta denominator"),
          pick("frame", "hybrid", {"hybrid", "spectral", "bump-product"}, "frame construction"),
          num("tol", 1e-8, 0.0, 1.0, "frame tolerance")},
         {{"smoke", {{"m", 2}, {"n", 2}, {"k", 0}, {"p", 1}, {"q", 3}}}},
         run_torus_cover},
        {"torus-area", "2 pi times the Dixmier slope of D^-2 against 1 / Im tau",
         {num("tau_re", 0.0, -10.0, 10.0, "Re tau"), num("tau_im", 1.0, 0.05, 20.0, "Im tau"),
          num("cutoff", 400, 20, 2000, "lattice cutoff R"), num("rel_tol", 0.02, 0.0, 1.0, "relative tolerance")},
         {{"smoke", json::object()}},
         run_torus_area},
        {"galois-check", "Canonical-map solver against the rank-based bijectivity test",
         {pick("mode", "boring", {"boring", "z2-conjugation", "trivial", "random"}, "instance family"),
          pick("group", "Z3", kGroups, "finite group"), num("base_dim", 1, 1, 3, "base algebra M_d for boring"),
          num("trials", 50, 1, 1000, "random instances"), num("tol", 1e-8, 0.0, 1.0, "solver tolerance")},
         {{"smoke", {{"mode", "random"}, {"trials", 10}}},
          {"boring", {{"mode", "boring"}}},
          {"z2-conjugation", {{"mode", "z2-conjugation"}}},
          {"trivial", {{"mode", "trivial"}}},
          {"random", {{"mode", "random"}}}},
         run_galois_check},
        {"vn-orth", "Von Neumann orthogonalization of random commuting partitions",
         {num("dim", 8, 1, 64, "matrix dimension"), num("count", 3, 1, 16, "partition size"),
          num("trials", 100, 1, 10000, "random partitions"), num("tol", 1e-9, 0.0, 1.0, "tolerance")},
         {{"smoke", {{"trials", 20}}}},
         run_vn_orth},
        {"star-check", "Left twist intertwines the star product on truncated torus modes",
         {num("theta", 0.3819660112501051, -1.0, 1.0, "deformation parameter"),
          num("modes", 6, 1, 6, "mode cutoff R"), num("pairs", 20, 1, 200, "random pairs for the twist"),
          num("triples", 5, 1, 200, "random triples for associativity"),
          num("parts", 3, 1, 16, "homogeneous parts per operator"),
          num("tol", 1e-10, 0.0, 1.0, "twist tolerance"), num("assoc_tol", 1e-12, 0.0, 1.0, "associativity tolerance")},
         {{"smoke", {{"modes", 4}, {"pairs", 5}, {"triples", 2}}}},
         run_star_check},
        {"connection-check", "Leibniz rule of Grassmannian connections on random framed modules",
         {num("instances", 100, 1, 10000, "random modules"), num("max_dim", 8, 2, 16, "bound on k * d"),
          num("tol", 1e-10, 0.0, 1.0, "Leibniz tolerance")},
         {{"smoke", {{"instances", 20}}}},
         run_connection_check},
        {"dirac-lift", "Lift of a base Dirac operator to a finite cover",
         {pick("mode", "boring", {"boring", "circle"}, "boring cover or circle root extension"),
          num("base_dim", 16, 3, 64, "base grid size"), pick("group", "Z3", kGroups, "group of the boring cover"),
          num("sheets", 2, 1, 4, "sheets of the circle cover"), num("tol", 1e-9, 0.0, 1.0, "tolerance")},
         {{"smoke", json::object()}, {"circle", {{"mode", "circle"}, {"base_dim", 32}}}},
         run_dirac_lift},
        {"dixmier", "Dixmier-trace estimator on analytic, lifted, matrix or CSV series",
         {pick("series", "circle", {"circle", "harmonic", "torus", "trace-class", "lift", "matrix", "csv"},
               "series source"),
          num("n_max", 1000000, 1000, 10000000, "terms of analytic series"), num("c", 1.0, 1e-6, 1e6, "harmonic constant"),
          num("tau_re", 0.0, -10.0, 10.0, "Re tau"), num("tau_im", 1.0, 0.05, 20.0, "Im tau"),
          num("cutoff", 400, 20, 2000, "torus lattice cutoff"), num("group_order", 4, 1, 64, "lift multiplicity"),
          num("dim", 64, 2, 256, "matrix dimension"), num("pairs", 50, 1, 1000, "random matrix pairs"),
          num("slack", 1e-10, 0.0, 1.0, "inequality slack"), text("input", "", "CSV file of (k, mu_k)")},
         {{"smoke", {{"n_max", 100000}}}},
         run_dixmier},
        {"root-extension", "Galois frame of the n-th root extension of a unitary",
         {num("base_dim", 16, 2, 64, "dimension of the base unitary"), num("n", 2, 1, 6, "root order"),
          num("tol", 1e-8, 0.0, 1.0, "frame tolerance")},
         {{"smoke", json::object()}},
         run_root_extension},
        {"mapping-cone", "Root extension over the mapping-cone torsion example",
         {num("n", 2, 2, 4, "root order"), num("t_grid", 4, 2, 16, "samples of the cone parameter"),
          num("q", 8, 2, 32, "fibre dimension, divisible by n"), num("tol", 1e-8, 0.0, 1.0, "frame tolerance")},
         {{"smoke", {{"t_grid", 3}}}},
         run_mapping_cone},
        {"su2-disconnect", "Central decomposition of the SU(2)-sampled root extension",
         {num("n", 3, 2, 4, "root order"), num("grid", 6, 2, 12, "SU(2) sample points")},
         {{"smoke", json::object()}},
         run_su2},
    };
    return all;
}

json coerce(const Param& p, const json& value) {
    auto bad = [&](const std::string& why) {
        return Error(ErrorCode::ConfigInvalid, "parameter " + p.name + ": " + why);
    };
    if (p.fallback.is_string()) {
        if (!value.is_string()) throw bad("expected a string");
        const auto s = value.get<std::string>();
        if (!p.choices.empty() && std::find(p.choices.begin(), p.choices.end(), s) == p.choices.end())
            throw bad("unknown choice " + s);
        return value;
    }
    if (!value.is_number()) throw bad("expected a number");
    const double x = value.get<double>();
    if (!std::isfinite(x) || x < p.lo || x > p.hi)
        throw bad("outside [" + json(p.lo).dump() + ", " + json(p.hi).dump() + "]");
    if (p.fallback.is_number_integer()) {
        if (x != std::floor(x)) throw bad("expected an integer");
        return json(static_cast<long>(x));
    }
    return json(x);
}

json coerce_text(const Param& p, const std::string& text) {
    if (p.fallback.is_string()) return coerce(p, json(text));
    size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty())
        throw Error(ErrorCode::ConfigInvalid, "parameter " + p.name + ": cannot parse '" + text + "'");
    return coerce(p, json(x));
}

std::vector<std::string> emit_plotdata(const std::string& experiment, const std::vector<Series>& series,
                                       const std::string& dir) {
    std::vector<std::string> written;
    if (dir.empty()) return written;
    std::filesystem::create_directories(dir);
    for (const auto& s : series) {
        if (s.rows.empty()) {
            std::cerr << "warning: series " << s.name << " is empty, no file written\n";
            continue;
        }
        const std::string path = (std::filesystem::path(dir) / (experiment + "_" + s.name + ".csv")).string();
        write_csv(path, s.header, s.rows);
        written.push_back(path);
    }
    return written;
}

}  // namespace nccover::cli
