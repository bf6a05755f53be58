#ifndef LINESING_MONOMIAL_HPP
#define LINESING_MONOMIAL_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>

namespace linesing {

/// Exponent vector, fixed width per ring. Eight slots cover every ring this
/// project builds (coordinates + t + blow-up directions + one eliminator).
class Mono {
  public:
    static constexpr size_t kMaxVars = 8;

    Mono() = default;
    explicit Mono(size_t arity) : n_(static_cast<uint8_t>(arity)) {
        if (arity > kMaxVars) throw std::invalid_argument("ring arity exceeds monomial width");
        e_.fill(0);
    }

    size_t arity() const { return n_; }
    uint32_t operator[](size_t i) const { return e_[i]; }
    void set(size_t i, uint32_t v) { e_[i] = v; }

    uint32_t degree() const {
        uint32_t d = 0;
        for (size_t i = 0; i < n_; ++i) d += e_[i];
        return d;
    }
    template <typename Pred>
    uint32_t degree_where(Pred&& in) const {
        uint32_t d = 0;
        for (size_t i = 0; i < n_; ++i)
            if (in(i)) d += e_[i];
        return d;
    }
    bool is_one() const { return degree() == 0; }

    friend Mono operator*(const Mono& a, const Mono& b) {
        Mono r(a.n_);
        for (size_t i = 0; i < a.n_; ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }
    bool divides(const Mono& m) const {
        for (size_t i = 0; i < n_; ++i)
            if (e_[i] > m.e_[i]) return false;
        return true;
    }
    // this / d, requires divisibility
    Mono quotient_by(const Mono& d) const {
        Mono r(n_);
        for (size_t i = 0; i < n_; ++i) r.e_[i] = e_[i] - d.e_[i];
        return r;
    }
    friend Mono lcm(const Mono& a, const Mono& b) {
        Mono r(a.n_);
        for (size_t i = 0; i < a.n_; ++i) r.e_[i] = a.e_[i] > b.e_[i] ? a.e_[i] : b.e_[i];
        return r;
    }
    friend bool coprime(const Mono& a, const Mono& b) {
        for (size_t i = 0; i < a.n_; ++i)
            if (a.e_[i] > 0 && b.e_[i] > 0) return false;
        return true;
    }

    bool operator==(const Mono& o) const { return n_ == o.n_ && e_ == o.e_; }
    bool operator!=(const Mono& o) const { return !(*this == o); }

    /// Ring-independent exponent-lex comparison used for canonical term
    /// storage; semantic term orders live in order.hpp.
    static int lex_cmp(const Mono& a, const Mono& b) {
        for (size_t i = 0; i < a.n_; ++i) {
            if (a.e_[i] != b.e_[i]) return a.e_[i] < b.e_[i] ? -1 : 1;
        }
        return 0;
    }
    bool lex_less(const Mono& o) const { return lex_cmp(*this, o) < 0; }

    size_t hash() const {
        size_t h = n_;
        for (size_t i = 0; i < n_; ++i) h = h * 1000003u + e_[i];
        return h;
    }

  private:
    std::array<uint32_t, kMaxVars> e_{};
    uint8_t n_ = 0;
};

}  // namespace linesing

#endif
