#pragma once

#include "intlinalg.hpp"
#include "rational.hpp"

#include <optional>
#include <set>
#include <vector>

namespace troppatch {

// Linear constraint coef . x REL rhs over the rationals.
enum class Rel { GE, GT, EQ };

struct LinCon {
    QVec coef;
    Rat rhs;
    Rel rel = Rel::GE;
};

namespace detail {

// Scale a row to primitive integer form for deduplication and size control.
inline void normalize_row(LinCon& c) {
    BigInt l(1);
    for (const Rat& r : c.coef) l = l * r.den() / BigInt::gcd(l, r.den());
    l = l * c.rhs.den() / BigInt::gcd(l, c.rhs.den());
    BigInt g(0);
    auto acc = [&](const Rat& r) {
        BigInt scaled = r.num() * (l / r.den());
        g = BigInt::gcd(g, scaled);
        return scaled;
    };
    std::vector<BigInt> nums;
    nums.reserve(c.coef.size() + 1);
    for (const Rat& r : c.coef) nums.push_back(acc(r));
    nums.push_back(acc(c.rhs));
    if (g.is_zero()) g = BigInt(1);
    for (size_t i = 0; i < c.coef.size(); ++i) c.coef[i] = Rat(nums[i] / g, BigInt(1));
    c.rhs = Rat(nums.back() / g, BigInt(1));
}

inline std::string row_key(const LinCon& c) {
    std::string k;
    for (const Rat& r : c.coef) { k += r.to_string(); k += ','; }
    k += '|';
    k += c.rhs.to_string();
    return k;
}

struct Elimination {
    int var;
    bool by_equation;
    LinCon equation;            // when by_equation
    std::vector<LinCon> lowers; // rows with coef[var] > 0
    std::vector<LinCon> uppers; // rows with coef[var] < 0
};

} // namespace detail

class FourierMotzkin {
public:
    // Decide feasibility of a mixed strict/weak/equality rational system.
    static bool feasible(const std::vector<LinCon>& cons, int nvars) {
        return run(cons, nvars).has_value();
    }

    // A rational solution, if one exists.
    static std::optional<QVec> solve(const std::vector<LinCon>& cons, int nvars) {
        return run(cons, nvars);
    }

private:
    static std::optional<QVec> run(std::vector<LinCon> rows, int nvars) {
        for (auto& r : rows) {
            if (static_cast<int>(r.coef.size()) != nvars)
                throw TroppatchError("BadDimension", "constraint width mismatch");
            detail::normalize_row(r);
        }
        std::vector<detail::Elimination> steps;
        std::vector<bool> alive(nvars, true);
        for (int round = 0; round < nvars; ++round) {
            int var = pick_var(rows, alive, nvars);
            if (var < 0) break;
            alive[var] = false;
            detail::Elimination st;
            st.var = var;
            int eq_idx = -1;
            for (size_t i = 0; i < rows.size(); ++i)
                if (rows[i].rel == Rel::EQ && !rows[i].coef[var].is_zero()) { eq_idx = static_cast<int>(i); break; }
            if (eq_idx >= 0) {
                st.by_equation = true;
                st.equation = rows[eq_idx];
                LinCon eq = rows[eq_idx];
                rows.erase(rows.begin() + eq_idx);
                for (auto& r : rows) substitute(r, eq, var);
            } else {
                st.by_equation = false;
                std::vector<LinCon> zs;
                for (auto& r : rows) {
                    int s = r.coef[var].sign();
                    if (s > 0) st.lowers.push_back(r);
                    else if (s < 0) st.uppers.push_back(r);
                    else zs.push_back(std::move(r));
                }
                rows = std::move(zs);
                for (const auto& lo : st.lowers) {
                    for (const auto& up : st.uppers) {
                        LinCon combined;
                        combined.coef.assign(nvars, Rat(0));
                        Rat a = lo.coef[var];          // > 0
                        Rat b = Rat(0) - up.coef[var]; // > 0
                        for (int k = 0; k < nvars; ++k)
                            combined.coef[k] = b * lo.coef[k] + a * up.coef[k];
                        combined.rhs = b * lo.rhs + a * up.rhs;
                        combined.rel = (lo.rel == Rel::GT || up.rel == Rel::GT) ? Rel::GT : Rel::GE;
                        detail::normalize_row(combined);
                        rows.push_back(std::move(combined));
                    }
                }
            }
            if (!prune(rows)) return std::nullopt;
            steps.push_back(std::move(st));
        }
        // only constant rows remain
        for (const auto& r : rows)
            if (!constant_row_ok(r)) return std::nullopt;

        QVec x(nvars, Rat(0));
        for (auto it = steps.rbegin(); it != steps.rend(); ++it)
            assign(*it, x);
        return x;
    }

    static void substitute(LinCon& r, const LinCon& eq, int var) {
        if (r.coef[var].is_zero()) return;
        Rat f = r.coef[var] / eq.coef[var];
        for (size_t k = 0; k < r.coef.size(); ++k) r.coef[k] = r.coef[k] - f * eq.coef[k];
        r.rhs = r.rhs - f * eq.rhs;
        detail::normalize_row(r);
    }

    static bool constant_row_ok(const LinCon& r) {
        for (const Rat& c : r.coef)
            if (!c.is_zero()) throw TroppatchError("Internal", "non-constant row after elimination");
        switch (r.rel) {
            case Rel::GE: return r.rhs <= Rat(0);
            case Rel::GT: return r.rhs < Rat(0);
            case Rel::EQ: return r.rhs.is_zero();
        }
        return false;
    }

    // Drop satisfied constant rows, dedupe, detect constant contradictions.
    static bool prune(std::vector<LinCon>& rows) {
        std::vector<LinCon> keep;
        std::set<std::string> seen_ge, seen_gt, seen_eq;
        for (auto& r : rows) {
            bool constant = true;
            for (const Rat& c : r.coef)
                if (!c.is_zero()) { constant = false; break; }
            if (constant) {
                if (!constant_row_ok(r)) return false;
                continue;
            }
            auto key = detail::row_key(r);
            auto& pool = (r.rel == Rel::EQ) ? seen_eq : (r.rel == Rel::GT ? seen_gt : seen_ge);
            if (r.rel == Rel::GE && seen_gt.count(key)) continue; // strict version present
            if (!pool.insert(key).second) continue;
            keep.push_back(std::move(r));
        }
        rows = std::move(keep);
        return true;
    }

    static int pick_var(const std::vector<LinCon>& rows, const std::vector<bool>& alive, int nvars) {
        int best = -1;
        long long best_cost = -1;
        for (int v = 0; v < nvars; ++v) {
            if (!alive[v]) continue;
            long long pos = 0, neg = 0, eq = 0;
            for (const auto& r : rows) {
                int s = r.coef[v].sign();
                if (s == 0) continue;
                if (r.rel == Rel::EQ) ++eq;
                else if (s > 0) ++pos;
                else ++neg;
            }
            long long cost = eq > 0 ? 0 : pos * neg;
            if (best < 0 || cost < best_cost) { best = v; best_cost = cost; }
        }
        return best;
    }

    static void assign(const detail::Elimination& st, QVec& x) {
        auto eval_rest = [&](const LinCon& r) {
            Rat s = r.rhs;
            for (size_t k = 0; k < r.coef.size(); ++k)
                if (static_cast<int>(k) != st.var) s = s - r.coef[k] * x[k];
            return s;
        };
        if (st.by_equation) {
            x[st.var] = eval_rest(st.equation) / st.equation.coef[st.var];
            return;
        }
        bool has_lo = false, has_up = false, lo_strict = false, up_strict = false;
        Rat lo(0), up(0);
        for (const auto& r : st.lowers) {
            Rat bound = eval_rest(r) / r.coef[st.var];
            if (!has_lo || bound > lo || (bound == lo && r.rel == Rel::GT)) {
                if (!has_lo || bound > lo) { lo = bound; lo_strict = (r.rel == Rel::GT); }
                else lo_strict = lo_strict || (r.rel == Rel::GT);
            }
            has_lo = true;
        }
        for (const auto& r : st.uppers) {
            Rat bound = eval_rest(r) / r.coef[st.var]; // coef < 0 flips the inequality
            if (!has_up || bound < up || (bound == up && r.rel == Rel::GT)) {
                if (!has_up || bound < up) { up = bound; up_strict = (r.rel == Rel::GT); }
                else up_strict = up_strict || (r.rel == Rel::GT);
            }
            has_up = true;
        }
        if (has_lo && has_up) {
            if (lo == up) x[st.var] = lo; // both weak by feasibility
            else x[st.var] = (lo + up) / Rat(2);
        } else if (has_lo) {
            x[st.var] = lo_strict ? lo + Rat(1) : lo;
        } else if (has_up) {
            x[st.var] = up_strict ? up - Rat(1) : up;
        } else {
            x[st.var] = Rat(0);
        }
    }
};

} // namespace troppatch
