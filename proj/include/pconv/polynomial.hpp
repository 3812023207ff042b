#pragma once

#include "pconv/rational.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pconv {

// Largest exponent accepted by the parser and by pow().
inline constexpr std::uint32_t kMaxExponent = 1u << 16;
// Guard against runaway expansions like (x1+...+x9)^large.
inline constexpr std::size_t kMaxTerms = 1u << 20;

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

// Multivariate polynomial with exact complex-rational coefficients.
// Invariants: no stored coefficient is zero; all multi-indices have length nvars().
class Polynomial {
public:
    using Exponents = std::vector<std::uint32_t>;
    using TermMap = std::map<Exponents, CoefC>;

    Polynomial() : nvars_(1) {}
    explicit Polynomial(int nvars);

    static Polynomial constant(int nvars, CoefC c);
    static Polynomial variable(int nvars, int index);  // 0-based index

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    // Total degree; 0 for the zero polynomial by convention.
    int degree() const;
    int degree_in_var(int j) const;
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    void add_term(Exponents e, CoefC c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial pow(std::uint32_t k) const;
    Polynomial scaled(const CoefC& c) const;

    bool operator==(const Polynomial& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    Polynomial partial(int var) const;

    // Top-degree homogeneous part. Throws on the zero polynomial.
    Polynomial principal_part() const;
    bool is_homogeneous() const;

    // Same values, one extra (ignored) variable appended.
    Polynomial augmented() const;
    // Inverse of augmented() when the last variable is absent; nullopt otherwise.
    std::optional<Polynomial> drop_last_variable() const;

    // Substitute x = sum_j y_j * basis[j]; result lives in k = basis.size() variables.
    Polynomial compose_linear(const std::vector<std::vector<Rat>>& basis) const;

    // Exact evaluation at a rational point.
    CoefC eval_exact(const std::vector<Rat>& point) const;

    // Max |coefficient| (as double); tolerance scale for numeric checks.
    double coeff_scale() const;

    std::string to_string() const;

private:
    int nvars_;
    TermMap terms_;
};

// Compensated floating-point evaluation at a complex point.
std::complex<double> evaluate(const Polynomial& p, std::span<const std::complex<double>> point);
std::complex<double> evaluate(const Polynomial& p, std::span<const double> point);

// Grammar: expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
// factor := atom ('^' uint)?; atom := uint ('/' uint)? | 'i' | 'x'<digits> | '(' expr ')' | '-' factor.
// min_vars pads the ambient dimension beyond the largest variable index seen.
Polynomial parse_polynomial(std::string_view text, int min_vars = 0);

}  // namespace pconv
