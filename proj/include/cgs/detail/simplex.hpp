#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace cgs::detail {

enum class LpRelation { le, eq, ge };

struct LpRow {
    std::vector<double> coeffs; // length = number of structural variables
    LpRelation rel = LpRelation::le;
    double rhs = 0.0;
};

struct LpResult {
    bool feasible = false;
    bool bounded = false;
    double value = 0.0;
    std::vector<double> x; // structural variables only
};

/**
 * Minimize c.x subject to rows, x >= 0. Dense two-phase tableau simplex with
 * Bland's rule (anti-cycling). Meant for small oracle instances, not
 * performance work.
 */
class SimplexSolver {
  public:
    SimplexSolver(std::vector<double> objective, std::vector<LpRow> rows)
        : c_(std::move(objective)), nvars_(static_cast<int>(c_.size())) {
        for (auto& row : rows) {
            if (row.rhs < 0.0) {
                for (double& a : row.coeffs) a = -a;
                row.rhs = -row.rhs;
                row.rel = row.rel == LpRelation::le   ? LpRelation::ge
                          : row.rel == LpRelation::ge ? LpRelation::le
                                                      : LpRelation::eq;
            }
        }
        const int m = static_cast<int>(rows.size());
        int nslack = 0, nart = 0;
        for (const auto& row : rows) {
            if (row.rel != LpRelation::eq) ++nslack;
            if (row.rel != LpRelation::le) ++nart;
        }
        ncols_ = nvars_ + nslack + nart;
        art_begin_ = nvars_ + nslack;
        tab_.assign(m, std::vector<double>(ncols_ + 1, 0.0));
        basis_.resize(m);
        int slack = nvars_, art = art_begin_;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < nvars_; ++j) tab_[i][j] = rows[i].coeffs[j];
            tab_[i][ncols_] = rows[i].rhs;
            switch (rows[i].rel) {
                case LpRelation::le:
                    tab_[i][slack] = 1.0;
                    basis_[i] = slack++;
                    break;
                case LpRelation::ge:
                    tab_[i][slack++] = -1.0;
                    tab_[i][art] = 1.0;
                    basis_[i] = art++;
                    break;
                case LpRelation::eq:
                    tab_[i][art] = 1.0;
                    basis_[i] = art++;
                    break;
            }
        }
    }

    LpResult solve() {
        LpResult out;
        // phase 1: drive the artificial variables to zero
        std::vector<double> phase1(ncols_, 0.0);
        for (int j = art_begin_; j < ncols_; ++j) phase1[j] = 1.0;
        if (!iterate(phase1, /*allow_artificial=*/true)) return out; // cannot happen: phase 1 is bounded
        if (objective_value(phase1) > 1e-7) return out;              // infeasible
        expel_artificials();

        std::vector<double> phase2(ncols_, 0.0);
        for (int j = 0; j < nvars_; ++j) phase2[j] = c_[j];
        out.feasible = true;
        if (!iterate(phase2, /*allow_artificial=*/false)) return out; // unbounded
        out.bounded = true;
        out.value = objective_value(phase2);
        out.x.assign(nvars_, 0.0);
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i] < nvars_) out.x[basis_[i]] = tab_[i][ncols_];
        return out;
    }

  private:
    static constexpr double kEps = 1e-9;

    double objective_value(const std::vector<double>& c) const {
        double v = 0.0;
        for (std::size_t i = 0; i < basis_.size(); ++i) v += c[basis_[i]] * tab_[i][ncols_];
        return v;
    }

    double reduced_cost(const std::vector<double>& c, int j) const {
        double rc = c[j];
        for (std::size_t i = 0; i < basis_.size(); ++i) rc -= c[basis_[i]] * tab_[i][j];
        return rc;
    }

    /// Bland: entering = smallest improving column, leaving = min ratio with
    /// smallest basis index on ties. Returns false on unboundedness.
    bool iterate(const std::vector<double>& c, bool allow_artificial) {
        const int limit = allow_artificial ? ncols_ : art_begin_;
        const int m = static_cast<int>(basis_.size());
        while (true) {
            int enter = -1;
            for (int j = 0; j < limit; ++j) {
                if (reduced_cost(c, j) < -kEps) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            double best = 0.0;
            for (int i = 0; i < m; ++i) {
                if (tab_[i][enter] <= kEps) continue;
                const double ratio = tab_[i][ncols_] / tab_[i][enter];
                if (leave < 0 || ratio < best - 1e-12 ||
                    (ratio < best + 1e-12 && basis_[i] < basis_[leave]))
                    leave = i, best = ratio;
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    void pivot(int row, int col) {
        auto& pr = tab_[row];
        const double p = pr[col];
        for (double& a : pr) a /= p;
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (static_cast<int>(i) == row) continue;
            const double f = tab_[i][col];
            if (f == 0.0) continue;
            for (int j = 0; j <= ncols_; ++j) tab_[i][j] -= f * pr[j];
        }
        basis_[row] = col;
    }

    /// Pivot zero-valued basic artificials out; drop rows that prove redundant.
    void expel_artificials() {
        for (int i = static_cast<int>(basis_.size()) - 1; i >= 0; --i) {
            if (basis_[i] < art_begin_) continue;
            int col = -1;
            for (int j = 0; j < art_begin_ && col < 0; ++j)
                if (std::abs(tab_[i][j]) > 1e-7) col = j;
            if (col >= 0) {
                pivot(i, col);
            } else {
                tab_.erase(tab_.begin() + i);
                basis_.erase(basis_.begin() + i);
            }
        }
    }

    std::vector<double> c_;
    int nvars_;
    int ncols_ = 0;
    int art_begin_ = 0;
    std::vector<std::vector<double>> tab_;
    std::vector<int> basis_;
};

inline LpResult solve_lp(std::vector<double> objective, std::vector<LpRow> rows) {
    return SimplexSolver(std::move(objective), std::move(rows)).solve();
}

} // namespace cgs::detail
