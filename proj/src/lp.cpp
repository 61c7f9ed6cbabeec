#include "windshore/lp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace windshore {

int Lp::add_var(const std::string& name, double lo, double hi, double cost) {
    obj.push_back(cost);
    lb.push_back(lo);
    ub.push_back(hi);
    var_names.push_back(name);
    return static_cast<int>(obj.size()) - 1;
}

int Lp::add_row(Row row) {
    rows.push_back(std::move(row));
    return static_cast<int>(rows.size()) - 1;
}

namespace {

constexpr double kFeasTol = 1e-7;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-10;
constexpr int kRefactorEvery = 100;
constexpr int kDegenerateLimit = 60;

// Column-wise view of [A | -I] plus merged bounds/costs for structurals and
// slacks.
struct Tableau {
    int n = 0;  // structurals
    int m = 0;  // rows == slacks
    std::vector<std::vector<std::pair<int, double>>> cols;  // size n+m
    std::vector<double> lo, hi, cost;

    int total() const { return n + m; }
};

Tableau make_tableau(const Lp& lp) {
    Tableau t;
    t.n = lp.num_vars();
    t.m = lp.num_rows();
    t.cols.resize(t.total());
    t.lo.resize(t.total());
    t.hi.resize(t.total());
    t.cost.assign(t.total(), 0.0);
    for (int j = 0; j < t.n; ++j) {
        t.lo[j] = lp.lb[j];
        t.hi[j] = lp.ub[j];
        t.cost[j] = lp.obj[j];
        if (!(t.lo[j] > -Lp::kInf) || !(t.hi[j] < Lp::kInf))
            throw std::invalid_argument("structural variable bounds must be finite: " +
                                        lp.var_names[j]);
        if (t.lo[j] > t.hi[j])
            throw std::invalid_argument("inverted bounds on variable " + lp.var_names[j]);
    }
    for (int i = 0; i < t.m; ++i) {
        const auto& r = lp.rows[i];
        for (std::size_t k = 0; k < r.idx.size(); ++k)
            t.cols[r.idx[k]].push_back({i, r.val[k]});
        const int j = t.n + i;
        t.lo[j] = r.lo;
        t.hi[j] = r.hi;
        t.cols[j].push_back({i, -1.0});
        if (r.lo > r.hi) throw std::invalid_argument("inverted row bounds: " + r.name);
        if (!(r.lo > -Lp::kInf) && !(r.hi < Lp::kInf))
            throw std::invalid_argument("free row (no finite bound): " + r.name);
    }
    return t;
}

class Simplex {
public:
    Simplex(const Lp& lp, const Tableau& t) : lp_(lp), t_(t), m_(t.m) {
        binv_.resize(m_, m_);
        beta_.assign(m_, 0.0);
        in_basis_.assign(t_.total(), 0);
    }

    LpSolution run(const LpBasis* warm);

private:
    const Lp& lp_;
    const Tableau& t_;
    int m_;
    std::vector<int> basic_;
    std::vector<uint8_t> at_upper_;
    std::vector<uint8_t> in_basis_;
    Eigen::MatrixXd binv_;
    std::vector<double> beta_;
    int iterations_ = 0;
    int degenerate_streak_ = 0;

    double nb_value(int j) const { return at_upper_[j] ? t_.hi[j] : t_.lo[j]; }

    void cold_basis() {
        basic_.resize(m_);
        std::fill(in_basis_.begin(), in_basis_.end(), 0);
        at_upper_.assign(t_.total(), 0);
        for (int j = 0; j < t_.n; ++j)
            if (!(t_.lo[j] > -Lp::kInf)) at_upper_[j] = 1;
        for (int i = 0; i < m_; ++i) {
            basic_[i] = t_.n + i;
            in_basis_[t_.n + i] = 1;
        }
        binv_ = -Eigen::MatrixXd::Identity(m_, m_);
    }

    bool adopt_warm(const LpBasis& warm) {
        if (static_cast<int>(warm.basic.size()) != m_) return false;
        if (static_cast<int>(warm.at_upper.size()) != t_.total()) return false;
        std::vector<uint8_t> seen(t_.total(), 0);
        for (int j : warm.basic) {
            if (j < 0 || j >= t_.total() || seen[j]) return false;
            seen[j] = 1;
        }
        basic_ = warm.basic;
        at_upper_ = warm.at_upper;
        std::fill(in_basis_.begin(), in_basis_.end(), 0);
        for (int j : basic_) in_basis_[j] = 1;
        // clamp nonbasic flags to finite bounds
        for (int j = 0; j < t_.total(); ++j) {
            if (in_basis_[j]) continue;
            if (at_upper_[j] && !(t_.hi[j] < Lp::kInf)) at_upper_[j] = 0;
            if (!at_upper_[j] && !(t_.lo[j] > -Lp::kInf)) {
                if (!(t_.hi[j] < Lp::kInf)) return false;  // free column
                at_upper_[j] = 1;
            }
        }
        return refactor();
    }

    bool refactor() {
        Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m_, m_);
        for (int p = 0; p < m_; ++p)
            for (auto [i, v] : t_.cols[basic_[p]]) b(i, p) = v;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
        if (!lu.isInvertible()) return false;
        binv_ = lu.inverse();
        return true;
    }

    void compute_beta() {
        Eigen::VectorXd r = Eigen::VectorXd::Zero(m_);
        for (int j = 0; j < t_.total(); ++j) {
            if (in_basis_[j]) continue;
            const double v = nb_value(j);
            if (v == 0.0) continue;
            for (auto [i, a] : t_.cols[j]) r(i) += a * v;
        }
        Eigen::VectorXd b = -(binv_ * r);
        for (int i = 0; i < m_; ++i) beta_[i] = b(i);
    }

    double infeasibility() const {
        double total = 0.0;
        for (int p = 0; p < m_; ++p) {
            const int j = basic_[p];
            if (beta_[p] < t_.lo[j] - kFeasTol) total += t_.lo[j] - beta_[p];
            if (beta_[p] > t_.hi[j] + kFeasTol) total += beta_[p] - t_.hi[j];
        }
        return total;
    }

    // One simplex phase; phase1 drives bound violations of basics to zero,
    // phase2 optimizes the objective. Returns true when finished (optimal or
    // feasible), false when stuck infeasible (phase1 only).
    bool phase(bool phase1, int max_iter);

    Eigen::VectorXd ftran(int j) const {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(m_);
        for (auto [i, v] : t_.cols[j]) w += v * binv_.col(i);
        return w;
    }

    LpSolution extract(LpStatus status);
};

bool Simplex::phase(bool phase1, int max_iter) {
    bool bland = false;
    for (int iter = 0; iter < max_iter; ++iter, ++iterations_) {
        if (iterations_ > 0 && iterations_ % kRefactorEvery == 0) {
            refactor();
            compute_beta();
        }

        // phase cost on basics
        Eigen::VectorXd cb = Eigen::VectorXd::Zero(m_);
        bool any_infeasible = false;
        for (int p = 0; p < m_; ++p) {
            const int j = basic_[p];
            if (phase1) {
                if (beta_[p] < t_.lo[j] - kFeasTol) {
                    cb(p) = -1.0;  // below its bound: violation shrinks as value rises
                    any_infeasible = true;
                } else if (beta_[p] > t_.hi[j] + kFeasTol) {
                    cb(p) = 1.0;
                    any_infeasible = true;
                }
            } else {
                cb(p) = t_.cost[j];
            }
        }
        if (phase1 && !any_infeasible) return true;

        Eigen::VectorXd y = binv_.transpose() * cb;

        // entering column: maximize objective (phase2) / reduce violation (phase1)
        int enter = -1;
        int dir = 0;
        double best = phase1 ? kDualTol : kDualTol;
        for (int j = 0; j < t_.total(); ++j) {
            if (in_basis_[j]) continue;
            if (t_.hi[j] - t_.lo[j] <= 0.0) continue;  // fixed
            double d = (phase1 ? 0.0 : t_.cost[j]);
            double ya = 0.0;
            for (auto [i, v] : t_.cols[j]) ya += y(i) * v;
            d -= ya;
            // phase1: moving j by delta changes violation at rate +d * delta
            // (d = -cb'Binv a_j); improving when d*dir < 0. phase2: objective
            // changes at rate d*dir; improving when d*dir > 0.
            const double sense = phase1 ? -1.0 : 1.0;
            int cand_dir = 0;
            if (!at_upper_[j] && sense * d > best) cand_dir = 1;
            else if (at_upper_[j] && sense * d < -best) cand_dir = -1;
            if (cand_dir != 0) {
                if (bland) {
                    enter = j;
                    dir = cand_dir;
                    break;
                }
                best = std::abs(d);
                enter = j;
                dir = cand_dir;
            }
        }
        if (enter < 0) return phase1 ? false : true;  // phase1: stuck infeasible

        Eigen::VectorXd w = ftran(enter);
        // per unit step of the entering variable, basics move by dbeta = -dir*w
        double limit = t_.hi[enter] - t_.lo[enter];  // own bound flip
        int leave_pos = -1;
        double leave_bound = 0.0;
        for (int p = 0; p < m_; ++p) {
            const double db = -dir * w(p);
            if (std::abs(db) < kPivotTol) continue;
            const int j = basic_[p];
            const double v = beta_[p];
            double block;
            if (db > 0.0) {
                // rising: blocked by the upper bound; in phase1 a basic below
                // its lower bound blocks when it regains that bound, and one
                // above its upper bound may keep worsening
                if (phase1 && v > t_.hi[j] + kFeasTol) continue;
                block = (phase1 && v < t_.lo[j] - kFeasTol) ? t_.lo[j] : t_.hi[j];
                if (!(block < Lp::kInf)) continue;
            } else {
                if (phase1 && v < t_.lo[j] - kFeasTol) continue;
                block = (phase1 && v > t_.hi[j] + kFeasTol) ? t_.hi[j] : t_.lo[j];
                if (!(block > -Lp::kInf)) continue;
            }
            double cap = (block - v) / db;
            const double target = block;
            cap = std::max(cap, 0.0);
            if (cap < limit - 1e-12 || (cap < limit + 1e-12 && leave_pos >= 0 &&
                                        basic_[p] < basic_[leave_pos])) {
                limit = cap;
                leave_pos = p;
                leave_bound = target;
            }
        }

        if (limit >= Lp::kInf)
            throw std::logic_error("lp internal error: unbounded direction with bounded variables");

        if (limit < 1e-12) {
            if (++degenerate_streak_ > kDegenerateLimit) bland = true;
        } else {
            degenerate_streak_ = 0;
            if (bland) bland = false;
        }

        // apply the step
        for (int p = 0; p < m_; ++p) beta_[p] += -dir * w(p) * limit;
        const double enter_val = nb_value(enter) + dir * limit;

        if (leave_pos < 0) {
            // bound flip, basis unchanged
            at_upper_[enter] = at_upper_[enter] ? 0 : 1;
            continue;
        }

        const int leave = basic_[leave_pos];
        at_upper_[leave] = (leave_bound == t_.hi[leave]) ? 1 : 0;
        in_basis_[leave] = 0;
        in_basis_[enter] = 1;
        basic_[leave_pos] = enter;
        beta_[leave_pos] = enter_val;

        // update Binv for the replaced basis column
        const double pivot = w(leave_pos);
        if (std::abs(pivot) < kPivotTol) {
            refactor();
            compute_beta();
            continue;
        }
        Eigen::RowVectorXd prow = binv_.row(leave_pos) / pivot;
        for (int i = 0; i < m_; ++i) {
            if (i == leave_pos) continue;
            const double f = w(i);
            if (f != 0.0) binv_.row(i) -= f * prow;
        }
        binv_.row(leave_pos) = prow;
    }
    return false;
}

LpSolution Simplex::extract(LpStatus status) {
    LpSolution sol;
    sol.status = status;
    sol.iterations = iterations_;
    sol.x.assign(t_.n, 0.0);
    for (int j = 0; j < t_.n; ++j)
        if (!in_basis_[j]) sol.x[j] = nb_value(j);
    for (int p = 0; p < m_; ++p)
        if (basic_[p] < t_.n) sol.x[basic_[p]] = beta_[p];
    // clamp tiny bound excursions from the final solve
    for (int j = 0; j < t_.n; ++j)
        sol.x[j] = std::min(std::max(sol.x[j], lp_.lb[j]), lp_.ub[j]);

    sol.row_activity.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
        const auto& r = lp_.rows[i];
        double a = 0.0;
        for (std::size_t k = 0; k < r.idx.size(); ++k) a += r.val[k] * sol.x[r.idx[k]];
        sol.row_activity[i] = a;
    }
    sol.objective = 0.0;
    for (int j = 0; j < t_.n; ++j) sol.objective += lp_.obj[j] * sol.x[j];

    sol.basis.basic = basic_;
    sol.basis.at_upper = at_upper_;

    if (status == LpStatus::Infeasible) {
        for (int p = 0; p < m_; ++p) {
            const int j = basic_[p];
            if (beta_[p] < t_.lo[j] - kFeasTol || beta_[p] > t_.hi[j] + kFeasTol) {
                if (j >= t_.n) sol.infeasible_rows.push_back(j - t_.n);
            }
        }
    }
    return sol;
}

LpSolution Simplex::run(const LpBasis* warm) {
    bool warmed = false;
    if (warm && !warm->empty()) warmed = adopt_warm(*warm);
    if (!warmed) cold_basis();
    compute_beta();

    const int max_iter = 20000 + 50 * t_.total();
    if (infeasibility() > 0.0) {
        if (!phase(true, max_iter)) {
            if (warmed) {  // retry cold before giving up
                cold_basis();
                compute_beta();
                if (infeasibility() > 0.0 && !phase(true, max_iter))
                    return extract(LpStatus::Infeasible);
            } else {
                return extract(LpStatus::Infeasible);
            }
        }
    }
    const bool done = phase(false, max_iter);
    // final accuracy pass: rebuild the inverse and basic values from scratch
    refactor();
    compute_beta();
    return extract(done ? LpStatus::Optimal : LpStatus::IterationLimit);
}

}  // namespace

LpSolution solve_lp(const Lp& lp, const LpBasis* warm) {
    Tableau t = make_tableau(lp);
    Simplex s(lp, t);
    return s.run(warm);
}

void write_lp_format(const Lp& lp, std::ostream& os) {
    auto name = [&](int j) {
        return lp.var_names[j].empty() ? "x" + std::to_string(j) : lp.var_names[j];
    };
    os << "Maximize\n obj:";
    bool first = true;
    for (int j = 0; j < lp.num_vars(); ++j) {
        if (lp.obj[j] == 0.0) continue;
        os << (lp.obj[j] >= 0.0 && !first ? " +" : " ") << lp.obj[j] << " " << name(j);
        first = false;
    }
    if (first) os << " 0 x0";
    os << "\nSubject To\n";
    for (int i = 0; i < lp.num_rows(); ++i) {
        const auto& r = lp.rows[i];
        const std::string rn = r.name.empty() ? "c" + std::to_string(i) : r.name;
        auto body = [&](std::ostream& o) {
            bool f = true;
            for (std::size_t k = 0; k < r.idx.size(); ++k) {
                o << (r.val[k] >= 0.0 && !f ? " +" : " ") << r.val[k] << " " << name(r.idx[k]);
                f = false;
            }
        };
        if (r.lo == r.hi) {
            os << " " << rn << ":";
            body(os);
            os << " = " << r.lo << "\n";
        } else {
            if (r.hi < Lp::kInf) {
                os << " " << rn << "_u:";
                body(os);
                os << " <= " << r.hi << "\n";
            }
            if (r.lo > -Lp::kInf) {
                os << " " << rn << "_l:";
                body(os);
                os << " >= " << r.lo << "\n";
            }
        }
    }
    os << "Bounds\n";
    for (int j = 0; j < lp.num_vars(); ++j)
        os << " " << lp.lb[j] << " <= " << name(j) << " <= " << lp.ub[j] << "\n";
    os << "End\n";
}

}  // namespace windshore
