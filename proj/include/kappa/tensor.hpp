#pragma once

#include "kappa/pbw.hpp"

#include <array>

namespace kappa {

// Key of a rank-2/3 tensor term: componentwise normal-ordered monomials.
struct MonoTuple {
    std::array<Monomial, 3> legs;
    int rank = 2;

    bool operator==(const MonoTuple& o) const { return rank == o.rank && legs == o.legs; }
    bool operator<(const MonoTuple& o) const;
    int degree() const;
};

struct MonoTupleHash {
    std::size_t operator()(const MonoTuple& t) const {
        MonomialHash h;
        std::size_t s = static_cast<std::size_t>(t.rank);
        for (int k = 0; k < t.rank; ++k) s = s * 0x9e3779b97f4a7c15ULL ^ h(t.legs[static_cast<std::size_t>(k)]);
        return s;
    }
};

using TensorTermMap = std::unordered_map<MonoTuple, HSeries, MonoTupleHash>;

// Element of H^{ox rank} with HSeries coefficients; multiplication acts
// factorwise through the PBW engine. Carrier of coproducts, twists and
// R-matrices.
class TensorElement {
public:
    TensorElement() = default;
    TensorElement(SystemPtr sys, int rank, int order);

    static TensorElement unit(SystemPtr sys, int rank, int order);  // 1 (x) 1 [(x) 1]
    // a (x) b as a rank-2 tensor
    static TensorElement outer(const AlgebraElement& a, const AlgebraElement& b);
    static TensorElement outer3(const AlgebraElement& a, const AlgebraElement& b,
                                const AlgebraElement& c);

    const SystemPtr& system() const { return sys_; }
    int rank() const { return rank_; }
    int order() const { return order_; }
    const TensorTermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const MonoTuple& t, const HSeries& c);

    TensorElement operator-() const;
    friend TensorElement operator+(const TensorElement& a, const TensorElement& b);
    friend TensorElement operator-(const TensorElement& a, const TensorElement& b);
    TensorElement& operator+=(const TensorElement& o) { return *this = *this + o; }
    TensorElement& operator-=(const TensorElement& o) { return *this = *this - o; }

    TensorElement scaled(const HSeries& c) const;
    TensorElement scaled(const GaussianRational& c) const;
    TensorElement shifted(int k) const;
    TensorElement truncated(int order) const;

    bool equals(const TensorElement& o) const;
    friend bool operator==(const TensorElement& a, const TensorElement& b) { return a.equals(b); }

    // Factorwise product. The OpenMP kernel partitions the left term list and
    // merges thread-local accumulators; the serial version is the reference.
    friend TensorElement operator*(const TensorElement& a, const TensorElement& b);
    TensorElement mul_serial(const TensorElement& o) const;
    TensorElement mul_parallel(const TensorElement& o) const;

    TensorElement exp() const;     // requires an O(h) argument
    TensorElement invert() const;  // requires 1 + O(h) form

    TensorElement swap12() const;                // rank 2: F^{21}
    TensorElement negate_h() const;              // h -> -h on all coefficients
    TensorElement insert_unit_leg(int pos) const;  // rank 2 -> rank 3, pos in {0,1,2}

    // Multiply all legs together (rank 2: m(a (x) b) = a*b).
    AlgebraElement multiply_legs() const;

    // The h^k Taylor coefficient as a tensor with constant coefficients.
    TensorElement h_coefficient(int k) const;

    std::string str() const;

private:
    void normalize();

    SystemPtr sys_;
    int rank_ = 2;
    int order_ = 0;
    TensorTermMap terms_;
};

}  // namespace kappa
