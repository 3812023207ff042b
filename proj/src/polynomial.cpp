#include "pconv/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pconv {

Polynomial::Polynomial(int nvars) : nvars_(nvars) {
    if (nvars < 1) throw std::invalid_argument("Polynomial: nvars must be positive");
}

Polynomial Polynomial::constant(int nvars, CoefC c) {
    Polynomial p(nvars);
    p.add_term(Exponents(nvars, 0), std::move(c));
    return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
    if (index < 0 || index >= nvars) throw std::invalid_argument("Polynomial::variable: index out of range");
    Polynomial p(nvars);
    Exponents e(nvars, 0);
    e[index] = 1;
    p.add_term(std::move(e), CoefC(Rat(1)));
    return p;
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (auto a : e) s += static_cast<int>(a);
        d = std::max(d, s);
    }
    return d;
}

int Polynomial::degree_in_var(int j) const {
    if (j < 0 || j >= nvars_) throw std::invalid_argument("degree_in_var: index out of range");
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[j]);
    return static_cast<int>(d);
}

void Polynomial::add_term(Exponents e, CoefC c) {
    if (static_cast<int>(e.size()) != nvars_)
        throw std::invalid_argument("add_term: multi-index length mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(std::move(e), std::move(c));
        if (terms_.size() > kMaxTerms) throw std::runtime_error("polynomial expansion too large");
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial dimension mismatch");
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial dimension mismatch");
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial dimension mismatch");
    Polynomial r(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e(nvars_);
            for (int i = 0; i < nvars_; ++i) {
                std::uint64_t s = std::uint64_t(ea[i]) + eb[i];
                if (s > kMaxExponent) throw std::runtime_error("exponent overflow beyond 2^16");
                e[i] = static_cast<std::uint32_t>(s);
            }
            r.add_term(std::move(e), ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::pow(std::uint32_t k) const {
    if (k > kMaxExponent) throw std::runtime_error("exponent overflow beyond 2^16");
    Polynomial r = Polynomial::constant(nvars_, CoefC(Rat(1)));
    Polynomial base = *this;
    while (k > 0) {
        if (k & 1u) r = r * base;
        k >>= 1u;
        if (k > 0) base = base * base;
    }
    return r;
}

Polynomial Polynomial::scaled(const CoefC& c) const {
    Polynomial r(nvars_);
    if (c.is_zero()) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
    return r;
}

Polynomial Polynomial::partial(int var) const {
    if (var < 0 || var >= nvars_) throw std::invalid_argument("partial: index out of range");
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        d[var] -= 1;
        r.add_term(std::move(d), c * CoefC(Rat(e[var])));
    }
    return r;
}

Polynomial Polynomial::principal_part() const {
    if (is_zero()) throw std::invalid_argument("principal_part: zero polynomial");
    const int m = degree();
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (auto a : e) s += static_cast<int>(a);
        if (s == m) r.terms_.emplace(e, c);
    }
    return r;
}

bool Polynomial::is_homogeneous() const {
    if (terms_.empty()) return true;
    int m = -1;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (auto a : e) s += static_cast<int>(a);
        if (m < 0) m = s;
        if (s != m) return false;
    }
    return true;
}

Polynomial Polynomial::augmented() const {
    Polynomial r(nvars_ + 1);
    for (const auto& [e, c] : terms_) {
        Exponents x = e;
        x.push_back(0);
        r.terms_.emplace(std::move(x), c);
    }
    return r;
}

std::optional<Polynomial> Polynomial::drop_last_variable() const {
    if (nvars_ < 2) return std::nullopt;
    for (const auto& [e, c] : terms_)
        if (e.back() != 0) return std::nullopt;
    Polynomial r(nvars_ - 1);
    for (const auto& [e, c] : terms_) {
        Exponents x(e.begin(), e.end() - 1);
        r.terms_.emplace(std::move(x), c);
    }
    return r;
}

Polynomial Polynomial::compose_linear(const std::vector<std::vector<Rat>>& basis) const {
    const int k = static_cast<int>(basis.size());
    if (k < 1) throw std::invalid_argument("compose_linear: empty basis");
    for (const auto& b : basis)
        if (static_cast<int>(b.size()) != nvars_)
            throw std::invalid_argument("compose_linear: basis vector length mismatch");

    // Linear forms L_i(y) = sum_j basis[j][i] * y_j, one per original variable.
    std::vector<Polynomial> forms;
    forms.reserve(nvars_);
    for (int i = 0; i < nvars_; ++i) {
        Polynomial li(k);
        for (int j = 0; j < k; ++j) {
            if (basis[j][i] == 0) continue;
            Polynomial::Exponents e(k, 0);
            e[j] = 1;
            li.add_term(std::move(e), CoefC(basis[j][i]));
        }
        forms.push_back(std::move(li));
    }

    // Memoized powers of each linear form.
    std::vector<std::vector<Polynomial>> powers(nvars_);
    auto form_pow = [&](int i, std::uint32_t e) -> const Polynomial& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Polynomial::constant(k, CoefC(Rat(1))));
        while (cache.size() <= e) cache.push_back(cache.back() * forms[i]);
        return cache[e];
    };

    Polynomial result(k);
    for (const auto& [e, c] : terms_) {
        Polynomial t = Polynomial::constant(k, c);
        for (int i = 0; i < nvars_; ++i)
            if (e[i] > 0) t = t * form_pow(i, e[i]);
        result = result + t;
    }
    return result;
}

CoefC Polynomial::eval_exact(const std::vector<Rat>& point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw std::invalid_argument("eval_exact: dimension mismatch");
    CoefC acc;
    for (const auto& [e, c] : terms_) {
        Rat m(1);
        for (int i = 0; i < nvars_; ++i) {
            for (std::uint32_t a = 0; a < e[i]; ++a) m *= point[i];
        }
        acc += c * CoefC(m);
    }
    return acc;
}

double Polynomial::coeff_scale() const {
    double s = 0.0;
    for (const auto& [e, c] : terms_) s = std::max(s, c.magnitude());
    return s;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest total degree first, then map order.
    std::vector<const TermMap::value_type*> order;
    order.reserve(terms_.size());
    for (const auto& t : terms_) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
        long da = 0, db = 0;
        for (auto x : a->first) da += x;
        for (auto x : b->first) db += x;
        return da > db;
    });
    for (const auto* t : order) {
        const auto& [e, c] = *t;
        if (!first) os << " + ";
        first = false;
        os << c.to_string();
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            os << "*x" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

namespace {

// Neumaier-compensated sum of complex terms.
struct CompensatedC {
    double sr = 0, cr = 0, si = 0, ci = 0;
    void add(std::complex<double> v) {
        double t = sr + v.real();
        cr += (std::abs(sr) >= std::abs(v.real())) ? (sr - t) + v.real() : (v.real() - t) + sr;
        sr = t;
        t = si + v.imag();
        ci += (std::abs(si) >= std::abs(v.imag())) ? (si - t) + v.imag() : (v.imag() - t) + si;
        si = t;
    }
    std::complex<double> value() const { return {sr + cr, si + ci}; }
};

}  // namespace

std::complex<double> evaluate(const Polynomial& p, std::span<const std::complex<double>> point) {
    if (static_cast<int>(point.size()) != p.nvars())
        throw std::invalid_argument("evaluate: dimension mismatch");
    // Per-variable power tables.
    std::vector<std::vector<std::complex<double>>> pw(p.nvars());
    for (int i = 0; i < p.nvars(); ++i) {
        int d = p.degree_in_var(i);
        pw[i].resize(d + 1);
        pw[i][0] = 1.0;
        for (int a = 1; a <= d; ++a) pw[i][a] = pw[i][a - 1] * point[i];
    }
    CompensatedC acc;
    for (const auto& [e, c] : p.terms()) {
        std::complex<double> m = c.to_complex();
        for (int i = 0; i < p.nvars(); ++i)
            if (e[i] > 0) m *= pw[i][e[i]];
        acc.add(m);
    }
    return acc.value();
}

std::complex<double> evaluate(const Polynomial& p, std::span<const double> point) {
    std::vector<std::complex<double>> z(point.begin(), point.end());
    return evaluate(p, std::span<const std::complex<double>>(z));
}

namespace {

class Parser {
public:
    Parser(std::string_view text, int min_vars) : text_(text), min_vars_(min_vars) {}

    Polynomial run() {
        // First pass determines the ambient dimension.
        scan_nvars();
        pos_ = 0;
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return p;
    }

private:
    std::string_view text_;
    int min_vars_;
    std::size_t pos_ = 0;
    int nvars_ = 1;

    void scan_nvars() {
        int maxv = std::max(1, min_vars_);
        for (std::size_t i = 0; i + 1 < text_.size() || (i < text_.size() && text_[i] == 'x'); ++i) {
            if (text_[i] != 'x') continue;
            std::size_t j = i + 1;
            long idx = 0;
            bool any = false;
            while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) {
                idx = idx * 10 + (text_[j] - '0');
                if (idx > 64) throw ParseError("variable index too large (max x64)", i);
                ++j;
                any = true;
            }
            if (any) maxv = std::max(maxv, static_cast<int>(idx));
        }
        nvars_ = maxv;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool consume(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::uint64_t read_uint(const char* what) {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError(std::string("expected ") + what, pos_);
        std::uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > (std::uint64_t(1) << 40)) throw ParseError("integer literal too large", pos_);
            ++pos_;
        }
        return v;
    }

    Polynomial expr() {
        Polynomial acc = term();
        while (true) {
            if (consume('+')) {
                acc = acc + term();
            } else if (consume('-')) {
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (consume('*')) acc = acc * factor();
        return acc;
    }

    Polynomial factor() {
        Polynomial base = atom();
        if (consume('^')) {
            std::size_t at = pos_;
            std::uint64_t e = read_uint("exponent");
            if (e > kMaxExponent) throw ParseError("exponent overflow beyond 2^16", at);
            return base.pow(static_cast<std::uint32_t>(e));
        }
        return base;
    }

    Polynomial atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (!consume(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (c == 'i') {
            ++pos_;
            return Polynomial::constant(nvars_, CoefC(Rat(0), Rat(1)));
        }
        if (c == 'x') {
            std::size_t at = pos_;
            ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("expected variable index after 'x'", at);
            std::uint64_t idx = read_uint("variable index");
            if (idx < 1 || static_cast<int>(idx) > nvars_)
                throw ParseError("variable index out of range", at);
            return Polynomial::variable(nvars_, static_cast<int>(idx) - 1);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t num = read_uint("number");
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                std::size_t at = pos_;
                std::uint64_t den = read_uint("denominator");
                if (den == 0) throw ParseError("zero denominator", at);
                return Polynomial::constant(nvars_, CoefC(Rat(BigInt(num), BigInt(den))));
            }
            return Polynomial::constant(nvars_, CoefC(Rat(BigInt(num))));
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, int min_vars) {
    return Parser(text, min_vars).run();
}

}  // namespace pconv
