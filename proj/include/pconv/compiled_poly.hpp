#pragma once

#include "pconv/polynomial.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace pconv {

// Flattened polynomial for fast repeated evaluation at real points.
// Coefficients are rounded to double once at construction.
class CompiledPoly {
public:
    CompiledPoly() = default;

    explicit CompiledPoly(const Polynomial& p) : nvars_(p.nvars()) {
        maxdeg_.assign(nvars_, 0);
        for (const auto& [e, c] : p.terms()) {
            Term t;
            t.cr = rat_to_double(c.re);
            t.ci = rat_to_double(c.im);
            t.exps.assign(e.begin(), e.end());
            for (int i = 0; i < nvars_; ++i) maxdeg_[i] = std::max(maxdeg_[i], e[i]);
            terms_.push_back(std::move(t));
        }
        std::size_t tot = 0;
        offsets_.resize(nvars_);
        for (int i = 0; i < nvars_; ++i) {
            offsets_[i] = tot;
            tot += maxdeg_[i] + 1;
        }
        table_size_ = tot;
    }

    int nvars() const { return nvars_; }
    std::size_t workspace_size() const { return table_size_; }

    // `pw` must have workspace_size() doubles.
    void fill_powers(const double* x, double* pw) const {
        for (int i = 0; i < nvars_; ++i) {
            double* row = pw + offsets_[i];
            row[0] = 1.0;
            for (std::uint32_t a = 1; a <= maxdeg_[i]; ++a) row[a] = row[a - 1] * x[i];
        }
    }

    // |P(x)|^2
    double abs2(const double* x, double* pw) const {
        fill_powers(x, pw);
        double re = 0, im = 0;
        for (const auto& t : terms_) {
            double m = 1.0;
            for (int i = 0; i < nvars_; ++i) {
                std::uint32_t a = t.exps[i];
                if (a) m *= pw[offsets_[i] + a];
            }
            re += t.cr * m;
            im += t.ci * m;
        }
        return re * re + im * im;
    }

    // |P(x)|^2 and its gradient.
    double abs2_grad(const double* x, double* pw, double* grad) const {
        fill_powers(x, pw);
        double re = 0, im = 0;
        std::vector<double> gre(nvars_, 0.0), gim(nvars_, 0.0);
        for (const auto& t : terms_) {
            double m = 1.0;
            for (int i = 0; i < nvars_; ++i) {
                std::uint32_t a = t.exps[i];
                if (a) m *= pw[offsets_[i] + a];
            }
            re += t.cr * m;
            im += t.ci * m;
            for (int i = 0; i < nvars_; ++i) {
                std::uint32_t a = t.exps[i];
                if (!a) continue;
                double dm = a * pw[offsets_[i] + (a - 1)];
                for (int j = 0; j < nvars_; ++j) {
                    if (j == i) continue;
                    std::uint32_t b = t.exps[j];
                    if (b) dm *= pw[offsets_[j] + b];
                }
                gre[i] += t.cr * dm;
                gim[i] += t.ci * dm;
            }
        }
        for (int i = 0; i < nvars_; ++i) grad[i] = 2.0 * (re * gre[i] + im * gim[i]);
        return re * re + im * im;
    }

private:
    struct Term {
        double cr, ci;
        std::vector<std::uint32_t> exps;
    };
    int nvars_ = 0;
    std::vector<Term> terms_;
    std::vector<std::uint32_t> maxdeg_;
    std::vector<std::size_t> offsets_;
    std::size_t table_size_ = 0;
};

// Reusable scratch buffers for CompiledPoly evaluation loops.
struct EvalScratch {
    std::vector<double> pw;
    std::vector<double> grad;
    std::vector<double> x;
    void fit(const CompiledPoly& cp) {
        pw.resize(std::max<std::size_t>(1, cp.workspace_size()));
        grad.resize(cp.nvars());
        x.resize(cp.nvars());
    }
};

}  // namespace pconv
