#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sullivan/error.hpp"

namespace sullivan {

struct GeneratorSymbol {
    std::string name;
    int degree = 0;  // >= 2 (simply-connected convention)
    int lower = 0;   // >= 0; construction artifact, 0 for user algebras
    bool odd() const { return degree % 2 != 0; }
};

// Monomial in a free CGA: factors sorted by generator index, odd generators
// squarefree, no zero exponents. The empty monomial is the unit.
struct Monomial {
    std::vector<std::pair<int32_t, int32_t>> factors;  // (generator index, exponent)

    bool is_unit() const { return factors.empty(); }
    int32_t exponent_of(int32_t gen) const;
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors == b.factors; }
};

struct MonomialHash {
    size_t operator()(const Monomial& m) const {
        size_t h = 1469598103934665603ull;
        for (auto& [g, e] : m.factors) {
            h = (h ^ size_t(g)) * 1099511628211ull;
            h = (h ^ size_t(e)) * 1099511628211ull;
        }
        return h;
    }
};

// Canonical monomial order: lexicographic on exponent vectors in generator
// order, larger exponent on an earlier generator first. Total within a degree.
int monomial_cmp(const Monomial& a, const Monomial& b);

// Free graded-commutative algebra on finitely many generators of degree >= 2,
// truncated at a mandatory degree cap. Monomial bases per degree and per
// (degree, lower) slice are enumerated lazily and cached.
//
// Generators may be appended while a model is under construction; published
// objects treat the algebra as frozen. Cached bases are protected by a mutex,
// so concurrent reads of a frozen algebra are safe.
class FreeCGA {
public:
    explicit FreeCGA(int degree_cap);

    uint64_t id() const { return id_; }
    int degree_cap() const { return cap_; }
    int size() const { return int(gens_.size()); }
    const GeneratorSymbol& gen(int i) const { return gens_[size_t(i)]; }
    const std::vector<GeneratorSymbol>& generators() const { return gens_; }
    std::optional<int32_t> find(std::string_view name) const;

    // Appends a generator. Degree must be >= 2, the name fresh, lower >= 0.
    int32_t add_generator(const std::string& name, int degree, int lower = 0);

    int mono_degree(const Monomial& m) const;
    int mono_lower(const Monomial& m) const;

    // All monomials of total degree n, canonical order. Rejects n > cap.
    const std::vector<Monomial>& degree_basis(int n) const;
    // Monomials of total degree n and lower degree p, canonical order.
    const std::vector<Monomial>& slice_basis(int n, int p) const;

    // Position of m in degree_basis(n) / slice_basis(n, p); -1 if absent.
    int32_t degree_index(const Monomial& m, int n) const;
    int32_t slice_index(const Monomial& m, int n, int p) const;

    int max_lower_at(int degree) const;

private:
    struct Basis {
        std::vector<Monomial> monos;
        std::unordered_map<Monomial, int32_t, MonomialHash> index;
    };
    const Basis& degree_cache(int n) const;
    const Basis& slice_cache(int n, int p) const;
    void enumerate(int n, std::optional<int> lower, std::vector<Monomial>& out) const;

    uint64_t id_;
    int cap_;
    std::vector<GeneratorSymbol> gens_;
    std::unordered_map<std::string, int32_t> by_name_;

    mutable std::mutex mu_;
    mutable std::unordered_map<int64_t, std::unique_ptr<Basis>> cache_;  // key: n*4096+p+1, or n*4096 for degree-wide
};

using AlgebraPtr = std::shared_ptr<FreeCGA>;
using ConstAlgebraPtr = std::shared_ptr<const FreeCGA>;

// Product of monomials with Koszul sign; nullopt when an odd square collapses
// the product to zero. The sign counts odd-odd inversions of the merge.
std::optional<std::pair<int, Monomial>> monomial_product(const FreeCGA& alg, const Monomial& a,
                                                         const Monomial& b);

}  // namespace sullivan
