/*
   Copyright 2026 The ga2 Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef GA2_MPOLY_HPP
#define GA2_MPOLY_HPP

#include <array>
#include <map>

#include "field.hpp"

namespace ga2 {

/// Sparse polynomial in N symbolic unknowns over a ga2 field. Just enough
/// machinery for the constraint solvers: ring operations, substitution,
/// and shape queries (constant / univariate / linear-in-one-variable).
template <int N>
class MPoly {
   public:
    using Exp = std::array<int, N>;

    explicit MPoly(const FieldCtx& ctx) : ctx_(ctx) {}

    static MPoly zero(const FieldCtx& ctx) { return MPoly(ctx); }

    static MPoly constant(const Scalar& c) {
        MPoly r(c.ctx());
        if (!c.is_zero()) r.t_[Exp{}] = c;
        return r;
    }

    static MPoly variable(const FieldCtx& ctx, int idx) {
        MPoly r(ctx);
        Exp e{};
        e[idx] = 1;
        r.t_[e] = Scalar::one(ctx);
        return r;
    }

    const FieldCtx& ctx() const noexcept { return ctx_; }
    const std::map<Exp, Scalar>& terms() const noexcept { return t_; }
    bool is_zero() const noexcept { return t_.empty(); }

    bool is_constant() const noexcept {
        return t_.empty() || (t_.size() == 1 && t_.begin()->first == Exp{});
    }

    Scalar constant_value() const {
        auto it = t_.find(Exp{});
        return it == t_.end() ? Scalar::zero(ctx_) : it->second;
    }

    MPoly operator-() const {
        MPoly r(ctx_);
        for (const auto& [e, c] : t_) r.t_[e] = -c;
        return r;
    }

    MPoly operator+(const MPoly& o) const {
        MPoly r(*this);
        for (const auto& [e, c] : o.t_) r.add_term(e, c);
        return r;
    }

    MPoly operator-(const MPoly& o) const { return *this + (-o); }

    MPoly operator*(const MPoly& o) const {
        MPoly r(ctx_);
        for (const auto& [ea, ca] : t_)
            for (const auto& [eb, cb] : o.t_) {
                Exp e;
                for (int k = 0; k < N; ++k) e[k] = ea[k] + eb[k];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    MPoly scaled(const Scalar& s) const { return *this * constant(s); }

    int degree_in(int idx) const {
        int d = 0;
        for (const auto& [e, c] : t_) d = std::max(d, e[idx]);
        return d;
    }

    bool mentions(int idx) const { return degree_in(idx) > 0; }

    /// Replace variable idx by a scalar value.
    MPoly substitute(int idx, const Scalar& val) const {
        MPoly r(ctx_);
        for (const auto& [e, c] : t_) {
            Exp ne = e;
            ne[idx] = 0;
            r.add_term(ne, c * val.pow(e[idx]));
        }
        return r;
    }

    /// Replace variable idx by another polynomial (used for elimination).
    MPoly substitute(int idx, const MPoly& val) const {
        MPoly r(ctx_);
        for (const auto& [e, c] : t_) {
            Exp ne = e;
            ne[idx] = 0;
            MPoly term(ctx_);
            term.t_[ne] = c;
            MPoly pw = constant(Scalar::one(ctx_));
            for (int k = 0; k < e[idx]; ++k) pw = pw * val;
            r = r + term * pw;
        }
        return r;
    }

    /// If only variable idx occurs, return dense coefficients (low first).
    std::optional<std::vector<Scalar>> as_univariate(int idx) const {
        std::vector<Scalar> c(degree_in(idx) + 1, Scalar::zero(ctx_));
        for (const auto& [e, co] : t_) {
            for (int k = 0; k < N; ++k)
                if (k != idx && e[k] != 0) return std::nullopt;
            c[e[idx]] = co;
        }
        return c;
    }

    bool operator==(const MPoly& o) const { return ctx_ == o.ctx_ && t_ == o.t_; }

    std::string to_string(const std::array<std::string, N>& names) const {
        if (t_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : t_) {
            if (!out.empty()) out += " + ";
            out += c.to_string();
            for (int k = 0; k < N; ++k)
                if (e[k] > 0) out += "*" + names[k] + "^" + std::to_string(e[k]);
        }
        return out;
    }

   private:
    void add_term(const Exp& e, const Scalar& c) {
        auto it = t_.find(e);
        if (it == t_.end()) {
            if (!c.is_zero()) t_[e] = c;
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero()) t_.erase(it);
    }

    FieldCtx ctx_;
    std::map<Exp, Scalar> t_;
};

}  // namespace ga2

#endif  // GA2_MPOLY_HPP
