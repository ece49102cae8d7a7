#include "chainctl/proof_trace.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "chainctl/lie_engine.hpp"

namespace chainctl {

double ProofTraceReport::max_residual() const {
    double worst = 0.0;
    for (const auto& id : identities) worst = std::max(worst, id.residual);
    return worst;
}

bool ProofTraceReport::all_within(double tol) const {
    return max_residual() <= tol;
}

namespace {

const Complex kI(0.0, 1.0);

Matrix comm(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// One extracted generator triple for a site pair (n, n+1). Candidates are
// kept exactly as the recurrences produce them; `x_sign`/`y_sign` record
// their orientation against the canonical basis element.
struct SiteGenerators {
    Matrix x, y, ih;
    int x_sign = +1;
    int y_sign = +1;
};

// Shared state for both traces.
struct TraceContext {
    const ChainSpec& spec;
    int n;  // Hilbert space dimension N
    int r;
    ProofTraceReport report;

    explicit TraceContext(const ChainSpec& s, std::string theorem)
        : spec(s), n(s.n), r(s.actuator) {
        report.theorem = std::move(theorem);
    }

    double d(int i) const { return coupling_or_zero(spec, i); }
    double omega(int i) const {
        return spec.energies[static_cast<std::size_t>(i)] -
               spec.energies[static_cast<std::size_t>(i - 1)];
    }

    Matrix zero() const { return Matrix::Zero(n, n); }
    Matrix X(int m, int nn) const {
        if (m < 1 || nn <= m || nn > n) return zero();
        return su_basis_element(SuKind::x, m, nn, n).mat;
    }
    Matrix Y(int m, int nn) const {
        if (m < 1 || nn <= m || nn > n) return zero();
        return su_basis_element(SuKind::y, m, nn, n).mat;
    }
    Matrix Xn(int i) const { return X(i, i + 1); }
    Matrix Yn(int i) const { return Y(i, i + 1); }
    Matrix IH(int i) const {
        if (i < 1 || i > n - 1) return zero();
        return su_basis_element(SuKind::h, i, i, n).mat;
    }

    // Compare a computed expression against its closed form at both
    // orientations; record the better one.
    int check(const std::string& name, const Matrix& lhs, const Matrix& rhs) {
        IdentityCheck id;
        id.name = name;
        if (max_abs(rhs) < 1e-14) {
            id.residual = max_abs(lhs);
            id.sign = +1;
        } else {
            const double plus = max_abs(lhs - rhs);
            const double minus = max_abs(lhs + rhs);
            if (plus <= minus) {
                id.residual = plus;
                id.sign = +1;
            } else {
                id.residual = minus;
                id.sign = -1;
            }
        }
        report.identities.push_back(id);
        return id.sign;
    }

    void note(const std::string& text) { report.notes.push_back(text); }

    // Remove the y_n content of a running accumulator using the candidate
    // itself (Hilbert-Schmidt projection), so candidate orientation cannot
    // corrupt the bookkeeping. Returns the removed coefficient.
    static double project_out(Matrix& v, const Matrix& y_candidate) {
        const double denom = hs_inner(y_candidate, y_candidate);
        const double coef = hs_inner(y_candidate, v) / denom;
        v -= coef * y_candidate;
        return coef;
    }
};

std::string site_name(const char* prefix, int site) {
    std::ostringstream os;
    os << prefix << "_" << site;
    return os.str();
}

// Common opening moves of both proofs: from y_r and V_0^{(0)} = i(V_0 - d_r V_1)
// obtain x_r, h_r and the first-neighbor sums Y_1, X_1, Z_1.
struct CoreElements {
    Matrix V00;   // running accumulator seed
    Matrix iH0t;  // i * traceless H_0
    Matrix yr, xr, hr;
    Matrix Y1, X1, Z1;
    Matrix Y0, X0, X0p, Y0p;
};

CoreElements trace_core(TraceContext& c) {
    const int r = c.r;
    const int n = c.n;
    const Matrix a0 = build_drift(c.spec).mat;
    const Matrix ar = build_actuator(c.spec).mat;
    const Matrix v0 = a0 - (a0.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);

    CoreElements e;
    Matrix h0 = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) h0(i, i) = c.spec.energies[static_cast<std::size_t>(i)];
    e.iH0t = kI * (h0 - (a0.trace() / static_cast<double>(n)) * Matrix::Identity(n, n));

    e.yr = kI * ar;
    c.check("y_r", e.yr, c.Yn(r));

    e.V00 = kI * (v0 - c.d(r) * ar);
    {
        Matrix cf = e.iH0t;
        for (int i = 1; i <= n - 1; ++i) {
            if (i != r) cf += c.d(i) * c.Yn(i);
        }
        c.check("V0_0", e.V00, cf);
    }

    const double wr = c.omega(r);
    e.X0 = comm(e.yr, e.V00);
    c.check("X0", e.X0,
            c.d(r - 1) * c.X(r - 1, r + 1) - c.d(r + 1) * c.X(r, r + 2) - wr * c.Xn(r));
    e.Y0 = comm(e.X0, e.yr);
    c.check("Y0", e.Y0,
            c.d(r - 1) * c.Yn(r - 1) + c.d(r + 1) * c.Yn(r + 1) - 2.0 * wr * c.IH(r));
    e.X0p = comm(e.Y0, e.yr);
    c.check("X0p", e.X0p,
            -c.d(r - 1) * c.X(r - 1, r + 1) + c.d(r + 1) * c.X(r, r + 2) + 4.0 * wr * c.Xn(r));
    e.Y0p = comm(e.X0p, e.yr);
    c.check("Y0p", e.Y0p,
            -c.d(r - 1) * c.Yn(r - 1) - c.d(r + 1) * c.Yn(r + 1) + 8.0 * wr * c.IH(r));

    e.xr = (e.X0 + e.X0p) / (3.0 * wr);
    c.check("x_r", e.xr, c.Xn(r));
    e.hr = comm(e.xr, e.yr) / 2.0;
    c.check("h_r", e.hr, c.IH(r));

    e.Y1 = (4.0 * e.Y0 + e.Y0p) / 3.0;
    c.check("Y1", e.Y1, c.d(r - 1) * c.Yn(r - 1) + c.d(r + 1) * c.Yn(r + 1));
    e.X1 = comm(comm(e.xr, e.Y1), e.yr);
    c.check("X1", e.X1, c.d(r - 1) * c.Xn(r - 1) + c.d(r + 1) * c.Xn(r + 1));
    e.Z1 = comm(e.X1, e.Y1) / 2.0;
    c.check("Z1", e.Z1,
            c.d(r - 1) * c.d(r - 1) * c.IH(r - 1) + c.d(r + 1) * c.d(r + 1) * c.IH(r + 1));
    return e;
}

// Closed form of the running accumulator: i*H0_traceless plus the y-terms
// not yet excluded.
Matrix accumulator_closed_form(const TraceContext& c, const Matrix& iH0t,
                               const std::set<int>& excluded) {
    Matrix cf = iH0t;
    for (int i = 1; i <= c.n - 1; ++i) {
        if (!excluded.count(i)) cf += c.d(i) * c.Yn(i);
    }
    return cf;
}

// Outward sweep from an already-cleared window: repeatedly commute the
// newest i*h with the accumulator to pick up the next x, derive y and h,
// and strip the new y-term from the accumulator.
void sweep_outward(TraceContext& c, Matrix& v, const Matrix& iH0t, std::set<int>& excluded,
                   std::map<int, SiteGenerators>& got, int start, int step, const char* v_prefix) {
    for (int nxt = start; nxt >= 1 && nxt <= c.n - 1; nxt += step) {
        const int src = nxt - step;
        const auto& prev = got.at(src);
        SiteGenerators g;
        g.x = comm(prev.ih, v) / (-c.d(nxt));
        g.x_sign = c.check(site_name("x", nxt), g.x, c.Xn(nxt));
        g.y = -comm(g.x, prev.ih);
        g.y_sign = c.check(site_name("y", nxt), g.y, c.Yn(nxt));
        g.ih = comm(g.x, g.y) / 2.0;
        c.check(site_name("h", nxt), g.ih, c.IH(nxt));
        TraceContext::project_out(v, g.y);
        excluded.insert(nxt);
        c.check(site_name(v_prefix, nxt), v, accumulator_closed_form(c, iH0t, excluded));
        got.emplace(nxt, std::move(g));
    }
}

void require_thm1(const ChainSpec& spec) {
    const int r = spec.actuator;
    if (spec.n < 4) {
        throw std::invalid_argument("proof_trace: requires n >= 4");
    }
    if (!is_connected(spec)) {
        throw std::invalid_argument("proof_trace: hypothesis failed: some d_n = 0");
    }
    if (std::abs(transition_frequency(spec, r, r + 1)) <= kZeroCouplingTol) {
        throw std::invalid_argument("proof_trace: hypothesis failed: omega_r = 0");
    }
    if (!thm1_condition(spec)) {
        throw std::invalid_argument(
            "proof_trace: hypothesis failed: d_{r+1}^2 = d_{r-1}^2");
    }
}

}  // namespace

ProofTraceReport proof_trace_thm1(const ChainSpec& spec) {
    validate(spec);
    require_thm1(spec);

    TraceContext c(spec, "thm1");
    c.note("diagonal elements h_n evaluated as stored i*h_n");
    const int r = c.r;
    CoreElements e = trace_core(c);

    const Matrix Y1p = comm(e.Z1, e.X1) / 2.0;
    c.check("Y1p", Y1p, std::pow(c.d(r - 1), 3) * c.Yn(r - 1) +
                            std::pow(c.d(r + 1), 3) * c.Yn(r + 1));
    const Matrix X1p = comm(e.Y1, e.Z1) / 2.0;
    c.check("X1p", X1p, std::pow(c.d(r - 1), 3) * c.Xn(r - 1) +
                            std::pow(c.d(r + 1), 3) * c.Xn(r + 1));

    const double dm = c.d(r - 1), dp = c.d(r + 1);
    const double c1 = dm * dm - dp * dp;
    c.check("c1_elim_y_minus", Y1p - dp * dp * e.Y1, dm * c1 * c.Yn(r - 1));
    c.check("c1_elim_x_minus", X1p - dp * dp * e.X1, dm * c1 * c.Xn(r - 1));
    c.check("c1_elim_y_plus", Y1p - dm * dm * e.Y1, -dp * c1 * c.Yn(r + 1));
    c.check("c1_elim_x_plus", X1p - dm * dm * e.X1, -dp * c1 * c.Xn(r + 1));

    std::map<int, SiteGenerators> got;
    {
        SiteGenerators g{e.xr, e.yr, e.hr, +1, +1};
        g.x_sign = hs_inner(c.Xn(r), e.xr) >= 0 ? +1 : -1;
        got.emplace(r, std::move(g));
    }
    if (r - 1 >= 1) {
        SiteGenerators g;
        g.y = (Y1p - dp * dp * e.Y1) / (dm * c1);
        g.y_sign = c.check(site_name("y", r - 1), g.y, c.Yn(r - 1));
        g.x = (X1p - dp * dp * e.X1) / (dm * c1);
        g.x_sign = c.check(site_name("x", r - 1), g.x, c.Xn(r - 1));
        g.ih = comm(g.x, g.y) / 2.0;
        c.check(site_name("h", r - 1), g.ih, c.IH(r - 1));
        got.emplace(r - 1, std::move(g));
    }
    if (r + 1 <= c.n - 1) {
        SiteGenerators g;
        g.y = (Y1p - dm * dm * e.Y1) / (-dp * c1);
        g.y_sign = c.check(site_name("y", r + 1), g.y, c.Yn(r + 1));
        g.x = (X1p - dm * dm * e.X1) / (-dp * c1);
        g.x_sign = c.check(site_name("x", r + 1), g.x, c.Xn(r + 1));
        g.ih = comm(g.x, g.y) / 2.0;
        c.check(site_name("h", r + 1), g.ih, c.IH(r + 1));
        got.emplace(r + 1, std::move(g));
    }

    // running accumulator; exclusion set tracks which y_n it still carries
    Matrix v = e.V00 - e.Y1;
    std::set<int> excluded{r - 1, r, r + 1};
    c.check("V0_1", v, accumulator_closed_form(c, e.iH0t, excluded));

    const Matrix Y2p = comm(comm(e.Z1, v), e.Z1);
    c.check("Y2p", Y2p, c.d(r - 2) * std::pow(dm, 4) * c.Yn(r - 2) +
                            std::pow(dp, 4) * c.d(r + 2) * c.Yn(r + 2));

    const bool has_m2 = r - 2 >= 1;
    const bool has_p2 = r + 2 <= c.n - 1;
    if (has_m2 && has_p2) {
        // both second neighbors exist; isolate the forward one through V0_2
        Matrix v2 = v - Y2p / std::pow(dm, 4);
        const double c_fwd = c.d(r + 2) * (1.0 - std::pow(dp, 4) / std::pow(dm, 4));
        excluded.insert(r - 2);
        Matrix cf2 = accumulator_closed_form(c, e.iH0t, excluded);
        cf2 += (c_fwd - c.d(r + 2)) * c.Yn(r + 2);
        c.check("V0_2", v2, cf2);
        excluded.insert(r + 2);

        const Matrix X2 = comm(e.Z1, v2);
        c.check("X2", X2, dp * dp * c_fwd * c.Xn(r + 2));
        const Matrix Y2 = comm(X2, e.Z1);
        c.check("Y2", Y2, std::pow(dp, 4) * c_fwd * c.Yn(r + 2));

        SiteGenerators gp;
        gp.x = X2 / (dp * dp * c_fwd);
        gp.x_sign = c.check(site_name("x", r + 2), gp.x, c.Xn(r + 2));
        gp.y = Y2 / (std::pow(dp, 4) * c_fwd);
        gp.y_sign = c.check(site_name("y", r + 2), gp.y, c.Yn(r + 2));
        gp.ih = comm(gp.x, gp.y) / 2.0;
        c.check(site_name("h", r + 2), gp.ih, c.IH(r + 2));

        SiteGenerators gm;
        gm.y = (Y2p - std::pow(dp, 4) * c.d(r + 2) * (gp.y_sign > 0 ? gp.y : Matrix(-gp.y))) /
               (c.d(r - 2) * std::pow(dm, 4));
        gm.y_sign = c.check(site_name("y", r - 2), gm.y, c.Yn(r - 2));
        gm.x = comm(got.at(r - 1).ih, gm.y);
        gm.x_sign = c.check(site_name("x", r - 2), gm.x, c.Xn(r - 2));
        gm.ih = comm(gm.x, gm.y) / 2.0;
        c.check(site_name("h", r - 2), gm.ih, c.IH(r - 2));

        v = v2;
        const double removed = TraceContext::project_out(v, gp.y);
        {
            std::ostringstream os;
            os << "V0_3 subtraction coefficient is d_{r+2}(1 - d_{r+1}^4/d_{r-1}^4) = "
               << removed * gp.y_sign << ", not the printed d_{r+2} = " << c.d(r + 2);
            c.note(os.str());
        }
        c.check("V0_3", v, accumulator_closed_form(c, e.iH0t, excluded));
        got.emplace(r + 2, std::move(gp));
        got.emplace(r - 2, std::move(gm));
    } else if (has_p2) {
        // left edge: Y2p carries only the forward term
        SiteGenerators gp;
        gp.y = Y2p / (std::pow(dp, 4) * c.d(r + 2));
        gp.y_sign = c.check(site_name("y", r + 2), gp.y, c.Yn(r + 2));
        gp.x = comm(got.at(r + 1).ih, gp.y);
        gp.x_sign = c.check(site_name("x", r + 2), gp.x, c.Xn(r + 2));
        gp.ih = comm(gp.x, gp.y) / 2.0;
        c.check(site_name("h", r + 2), gp.ih, c.IH(r + 2));
        TraceContext::project_out(v, gp.y);
        excluded.insert(r + 2);
        c.check("V0_3", v, accumulator_closed_form(c, e.iH0t, excluded));
        got.emplace(r + 2, std::move(gp));
    } else if (has_m2) {
        // right edge: only the backward term
        SiteGenerators gm;
        gm.y = Y2p / (c.d(r - 2) * std::pow(dm, 4));
        gm.y_sign = c.check(site_name("y", r - 2), gm.y, c.Yn(r - 2));
        gm.x = comm(got.at(r - 1).ih, gm.y);
        gm.x_sign = c.check(site_name("x", r - 2), gm.x, c.Xn(r - 2));
        gm.ih = comm(gm.x, gm.y) / 2.0;
        c.check(site_name("h", r - 2), gm.ih, c.IH(r - 2));
        TraceContext::project_out(v, gm.y);
        excluded.insert(r - 2);
        c.check("V0_3", v, accumulator_closed_form(c, e.iH0t, excluded));
        got.emplace(r - 2, std::move(gm));
    }
    // when neither second neighbor exists (n = 4, r = 2) Y2p itself is zero
    // and the check above already recorded it

    sweep_outward(c, v, e.iH0t, excluded, got, r + 3, +1, "V_fwd");
    sweep_outward(c, v, e.iH0t, excluded, got, r - 3, -1, "V_bwd");

    for (int i = 1; i <= c.n - 1; ++i) {
        if (!got.count(i)) {
            throw std::runtime_error("proof_trace_thm1: generator extraction incomplete at site " +
                                     std::to_string(i));
        }
    }
    return c.report;
}

ProofTraceReport proof_trace_thm2(const ChainSpec& spec) {
    validate(spec);
    const auto k_opt = thm2_condition(spec);
    if (!k_opt.has_value()) {
        if (!is_connected(spec)) {
            throw std::invalid_argument("proof_trace: hypothesis failed: some d_n = 0");
        }
        const int r0 = spec.actuator;
        if (std::abs(transition_frequency(spec, r0, r0 + 1)) <= kZeroCouplingTol) {
            throw std::invalid_argument("proof_trace: hypothesis failed: omega_r = 0");
        }
        throw std::invalid_argument(
            "proof_trace: hypothesis failed: d_{r-k-1}^2 = d_{r+k+1}^2 for all k");
    }
    const int k = *k_opt;
    if (k == 0) {
        // the proof's own base case
        ProofTraceReport report = proof_trace_thm1(spec);
        report.theorem = "thm2";
        report.notes.insert(report.notes.begin(), "k = 0: delegated to the thm1 trace");
        return report;
    }

    TraceContext c(spec, "thm2");
    c.note("diagonal elements h_n evaluated as stored i*h_n");
    {
        std::ostringstream os;
        os << "smallest offset with differing squared couplings: k = " << k;
        c.note(os.str());
    }
    const int r = c.r;
    CoreElements e = trace_core(c);

    std::map<int, SiteGenerators> got;
    {
        SiteGenerators g{e.xr, e.yr, e.hr, +1, +1};
        g.x_sign = hs_inner(c.Xn(r), e.xr) >= 0 ? +1 : -1;
        got.emplace(r, std::move(g));
    }

    Matrix v = e.V00 - e.Y1;  // V_0^{(1)}
    std::set<int> excluded{r - 1, r, r + 1};
    c.check("V0_1", v, accumulator_closed_form(c, e.iH0t, excluded));

    // saved two-sided sums X_j^{(0)}, Y_j^{(0)} and their orientations
    std::map<int, Matrix> x0_saved, y0_saved;
    std::map<int, int> x0_sign, y0_sign;
    auto record_pair = [&](int j, const Matrix& xj, const Matrix& yj) {
        const Matrix xcf = c.d(r - j) * c.Xn(r - j) + c.d(r + j) * c.Xn(r + j);
        const Matrix ycf = c.d(r - j) * c.Yn(r - j) + c.d(r + j) * c.Yn(r + j);
        x0_saved[j] = xj;
        y0_saved[j] = yj;
        x0_sign[j] = hs_inner(xcf, xj) >= 0 ? +1 : -1;
        y0_sign[j] = hs_inner(ycf, yj) >= 0 ? +1 : -1;
    };
    record_pair(1, e.X1, e.Y1);

    Matrix Yj = e.Y1, Xj = e.X1, Zj = e.Z1;

    // recurrence: widen the two-sided window while the squared couplings
    // stay symmetric (j = 1 .. k-1)
    for (int j = 1; j <= k - 1; ++j) {
        const double dmj = c.d(r - j), dpj = c.d(r + j);
        const double wmj = c.omega(r - j), wpj = c.omega(r + j);
        const Matrix Zj1 = Zj / (dmj * dmj);
        c.check("Z" + std::to_string(j) + "_1", Zj1, c.IH(r - j) + c.IH(r + j));
        const Matrix Xj1 = comm(Yj, v);
        c.check("X" + std::to_string(j) + "_1", Xj1,
                dmj * c.d(r - j - 1) * c.X(r - j - 1, r - j + 1) - dmj * wmj * c.Xn(r - j) -
                    dpj * c.d(r + j + 1) * c.X(r + j, r + j + 2) - dpj * wpj * c.Xn(r + j));
        const Matrix Yj1 = comm(Xj1, Yj);
        c.check("Y" + std::to_string(j) + "_1", Yj1,
                dmj * dmj * c.d(r - j - 1) * c.Yn(r - j - 1) - 2.0 * dmj * dmj * wmj * c.IH(r - j) +
                    dpj * dpj * c.d(r + j + 1) * c.Yn(r + j + 1) -
                    2.0 * dpj * dpj * wpj * c.IH(r + j));
        const Matrix Yj2 = Yj1 / (dmj * dmj);
        c.check("Y" + std::to_string(j) + "_2", Yj2,
                c.d(r - j - 1) * c.Yn(r - j - 1) - 2.0 * wmj * c.IH(r - j) +
                    c.d(r + j + 1) * c.Yn(r + j + 1) - 2.0 * wpj * c.IH(r + j));
        const Matrix Xnext = comm(Zj1, Yj2);
        c.check("X" + std::to_string(j + 1) + "_0", Xnext,
                c.d(r - j - 1) * c.Xn(r - j - 1) + c.d(r + j + 1) * c.Xn(r + j + 1));
        const Matrix Ynext = comm(Xnext, Zj1);
        c.check("Y" + std::to_string(j + 1) + "_0", Ynext,
                c.d(r - j - 1) * c.Yn(r - j - 1) + c.d(r + j + 1) * c.Yn(r + j + 1));
        const Matrix Znext = comm(Xnext, Ynext) / 2.0;
        c.check("Z" + std::to_string(j + 1) + "_0", Znext,
                c.d(r - j - 1) * c.d(r - j - 1) * c.IH(r - j - 1) +
                    c.d(r + j + 1) * c.d(r + j + 1) * c.IH(r + j + 1));
        v -= Ynext;
        excluded.insert(r - j - 1);
        excluded.insert(r + j + 1);
        c.check("V0_" + std::to_string(j + 1), v, accumulator_closed_form(c, e.iH0t, excluded));
        Yj = Ynext;
        Xj = Xnext;
        Zj = Znext;
        record_pair(j + 1, Xj, Yj);
    }

    // k-step: break the symmetry at offset k+1 and extract the outer pair
    const double dmk = c.d(r - k), dpk = c.d(r + k);
    const double wmk = c.omega(r - k), wpk = c.omega(r + k);
    const Matrix Xk1 = comm(Yj, v);
    c.check("Xk_1", Xk1,
            dmk * c.d(r - k - 1) * c.X(r - k - 1, r - k + 1) - dmk * wmk * c.Xn(r - k) -
                dpk * c.d(r + k + 1) * c.X(r + k, r + k + 2) - dpk * wpk * c.Xn(r + k));
    const Matrix Yk1 = comm(Xk1, Yj);
    c.check("Yk_1", Yk1,
            dmk * dmk * c.d(r - k - 1) * c.Yn(r - k - 1) - 2.0 * dmk * dmk * wmk * c.IH(r - k) +
                dpk * dpk * c.d(r + k + 1) * c.Yn(r + k + 1) -
                2.0 * dpk * dpk * wpk * c.IH(r + k));
    const Matrix Zk1 = Zj / (dmk * dmk);
    c.check("Zk_1", Zk1, c.IH(r - k) + c.IH(r + k));
    const Matrix Xk2 = comm(Zk1, Yk1);
    c.check("Xk_2", Xk2,
            dmk * dmk * c.d(r - k - 1) * c.Xn(r - k - 1) +
                dpk * dpk * c.d(r + k + 1) * c.Xn(r + k + 1));
    c.note("Xk_2 closed form carries d^2 weights; the printed d^{-2} is a typo");
    const Matrix Xk3 = Xk2 / (dmk * dmk);
    c.check("Xk_3", Xk3, c.d(r - k - 1) * c.Xn(r - k - 1) + c.d(r + k + 1) * c.Xn(r + k + 1));
    const Matrix Yk2 = comm(Xk3, Zk1);
    c.check("Yk_2", Yk2, c.d(r - k - 1) * c.Yn(r - k - 1) + c.d(r + k + 1) * c.Yn(r + k + 1));
    const Matrix Zk2 = comm(Xk3, Yk2) / 2.0;
    c.check("Zk_2", Zk2,
            c.d(r - k - 1) * c.d(r - k - 1) * c.IH(r - k - 1) +
                c.d(r + k + 1) * c.d(r + k + 1) * c.IH(r + k + 1));
    const Matrix Yk3 = comm(Zk2, Xk3) / 2.0;
    c.check("Yk_3", Yk3,
            std::pow(c.d(r - k - 1), 3) * c.Yn(r - k - 1) +
                std::pow(c.d(r + k + 1), 3) * c.Yn(r + k + 1));
    c.note("y_{r±(k+1)} numerator uses the squared opposite coupling; printed first power");

    for (int sgn : {+1, -1}) {
        const int tgt = r + sgn * (k + 1);
        if (tgt < 1 || tgt > c.n - 1) continue;
        const double dt = c.d(tgt);
        const double do_ = c.d(r - sgn * (k + 1));
        SiteGenerators g;
        g.y = (Yk3 - do_ * do_ * Yk2) / (dt * (dt * dt - do_ * do_));
        g.y_sign = c.check(site_name("y", tgt), g.y, c.Yn(tgt));
        g.x = comm(g.y, Zk2) / (2.0 * dt * dt);
        g.x_sign = c.check(site_name("x", tgt), g.x, c.Xn(tgt));
        g.ih = comm(g.x, g.y) / 2.0;
        c.check(site_name("h", tgt), g.ih, c.IH(tgt));
        got.emplace(tgt, std::move(g));
    }

    // V_0^{(k+1)}: strip the freshly extracted outer y-terms
    for (int tgt : {r - k - 1, r + k + 1}) {
        auto it = got.find(tgt);
        if (it != got.end()) TraceContext::project_out(v, it->second.y);
        if (tgt >= 1 && tgt <= c.n - 1) excluded.insert(tgt);
    }
    c.check("V0_k1", v, accumulator_closed_form(c, e.iH0t, excluded));

    // walk the window back inward: x_{r±j} via the outer y when available,
    // otherwise by subtracting the known side from the saved two-sided sums
    for (int j = k; j >= 1; --j) {
        std::vector<std::pair<int, int>> pending;  // (sign, target)
        for (int sgn : {+1, -1}) {
            const int tgt = r + sgn * j;
            const int outer = r + sgn * (j + 1);
            if (tgt < 1 || tgt > c.n - 1) continue;
            auto out_it = got.find(outer);
            if (out_it == got.end()) {
                pending.emplace_back(sgn, tgt);
                continue;
            }
            const Matrix& y_out = out_it->second.y;
            SiteGenerators g;
            g.x = comm(comm(y_out, x0_saved.at(j)), y_out) / c.d(tgt);
            g.x_sign = c.check(site_name("x", tgt), g.x, c.Xn(tgt));
            g.y = comm(out_it->second.x, comm(g.x, y_out));
            g.y_sign = c.check(site_name("y", tgt), g.y, c.Yn(tgt));
            g.ih = comm(g.x, g.y) / 2.0;
            c.check(site_name("h", tgt), g.ih, c.IH(tgt));
            got.emplace(tgt, std::move(g));
        }
        for (auto [sgn, tgt] : pending) {
            const int oth = r - sgn * j;
            auto oth_it = got.find(oth);
            if (oth_it == got.end()) continue;
            // the outer generator fell off the chain; recover this side by
            // removing the other one from the saved sums (sign-corrected)
            const auto& go = oth_it->second;
            SiteGenerators g;
            g.x = (static_cast<double>(x0_sign.at(j)) * x0_saved.at(j) -
                   c.d(oth) * static_cast<double>(go.x_sign) * go.x) /
                  c.d(tgt);
            g.x_sign = c.check(site_name("x", tgt), g.x, c.Xn(tgt));
            g.y = (static_cast<double>(y0_sign.at(j)) * y0_saved.at(j) -
                   c.d(oth) * static_cast<double>(go.y_sign) * go.y) /
                  c.d(tgt);
            g.y_sign = c.check(site_name("y", tgt), g.y, c.Yn(tgt));
            g.ih = comm(g.x, g.y) / 2.0;
            c.check(site_name("h", tgt), g.ih, c.IH(tgt));
            c.note(site_name("x", tgt) +
                   ": outer generator out of range; recovered from the saved two-sided sum");
            got.emplace(tgt, std::move(g));
        }
    }

    sweep_outward(c, v, e.iH0t, excluded, got, r + k + 2, +1, "V_fwd");
    sweep_outward(c, v, e.iH0t, excluded, got, r - k - 2, -1, "V_bwd");

    for (int i = 1; i <= c.n - 1; ++i) {
        if (!got.count(i)) {
            throw std::runtime_error("proof_trace_thm2: generator extraction incomplete at site " +
                                     std::to_string(i));
        }
    }
    return c.report;
}

}  // namespace chainctl
