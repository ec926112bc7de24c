#include "sullivan/algebra.hpp"

#include <algorithm>
#include <atomic>

namespace sullivan {

namespace {
std::atomic<uint64_t> next_algebra_id{1};
}

int32_t Monomial::exponent_of(int32_t gen) const {
    for (auto& [g, e] : factors)
        if (g == gen) return e;
    return 0;
}

int monomial_cmp(const Monomial& a, const Monomial& b) {
    size_t i = 0, j = 0;
    while (i < a.factors.size() && j < b.factors.size()) {
        auto [ga, ea] = a.factors[i];
        auto [gb, eb] = b.factors[j];
        if (ga != gb) {
            // the monomial with a factor at the earlier generator sorts first
            return ga < gb ? -1 : 1;
        }
        if (ea != eb) return ea > eb ? -1 : 1;
        ++i;
        ++j;
    }
    if (i < a.factors.size()) return -1;
    if (j < b.factors.size()) return 1;
    return 0;
}

FreeCGA::FreeCGA(int degree_cap) : id_(next_algebra_id++), cap_(degree_cap) {
    if (degree_cap < 2) throw Error("degree cap must be at least 2");
}

std::optional<int32_t> FreeCGA::find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

int32_t FreeCGA::add_generator(const std::string& name, int degree, int lower) {
    if (degree < 2)
        throw Error("generator '" + name + "' has degree " + std::to_string(degree) +
                    "; generators must have degree >= 2");
    if (lower < 0) throw Error("generator '" + name + "' has negative lower degree");
    if (by_name_.count(name)) throw Error("duplicate generator name '" + name + "'");
    int32_t idx = int32_t(gens_.size());
    gens_.push_back({name, degree, lower});
    by_name_.emplace(name, idx);
    // A new generator contributes its bare monomial to the degree-n bases
    // (it sorts after everything already there, since its index is maximal)
    // and product monomials only in degrees >= n + 2. Bases in between stay
    // valid, which keeps incremental model building out of re-enumeration.
    std::lock_guard<std::mutex> lock(mu_);
    Monomial single;
    single.factors.emplace_back(idx, 1);
    for (auto it = cache_.begin(); it != cache_.end();) {
        int deg = int(it->first / 4096);
        if (deg <= degree + 1 && deg != degree) {
            ++it;
            continue;
        }
        if (deg == degree) {
            int64_t rem = it->first % 4096;
            if (rem == 0 || rem == lower + 1) {
                it->second->index.emplace(single, int32_t(it->second->monos.size()));
                it->second->monos.push_back(single);
            }
            ++it;
            continue;
        }
        it = cache_.erase(it);
    }
    return idx;
}

int FreeCGA::mono_degree(const Monomial& m) const {
    int d = 0;
    for (auto& [g, e] : m.factors) d += gens_[size_t(g)].degree * e;
    return d;
}

int FreeCGA::mono_lower(const Monomial& m) const {
    int p = 0;
    for (auto& [g, e] : m.factors) p += gens_[size_t(g)].lower * e;
    return p;
}

int FreeCGA::max_lower_at(int degree) const {
    // every generator has lower <= degree - 2, so a monomial of degree n
    // has lower at most n - 2 (and the unit has lower 0)
    return degree >= 2 ? degree - 2 : 0;
}

void FreeCGA::enumerate(int n, std::optional<int> lower, std::vector<Monomial>& out) const {
    // suffix minima let the recursion stop as soon as no later generator fits
    std::vector<int> min_deg(gens_.size() + 1, INT32_MAX);
    for (size_t i = gens_.size(); i-- > 0;)
        min_deg[i] = std::min(min_deg[i + 1], gens_[i].degree);
    std::vector<std::pair<int32_t, int32_t>> acc;
    auto rec = [&](auto&& self, int32_t i, int deg_left, int low_left) -> void {
        if (deg_left == 0) {
            if (!lower || low_left == 0) {
                Monomial m;
                m.factors = acc;
                out.push_back(std::move(m));
            }
            return;
        }
        if (i >= int32_t(gens_.size()) || min_deg[size_t(i)] > deg_left) return;
        const GeneratorSymbol& g = gens_[size_t(i)];
        self(self, i + 1, deg_left, low_left);
        int emax = g.odd() ? 1 : deg_left / g.degree;
        for (int e = 1; e <= emax; ++e) {
            int nd = deg_left - e * g.degree;
            if (nd < 0) break;
            int nl = low_left - e * g.lower;
            if (lower && nl < 0) break;
            acc.emplace_back(i, e);
            self(self, i + 1, nd, lower ? nl : 0);
            acc.pop_back();
        }
    };
    rec(rec, 0, n, lower.value_or(0));
    std::sort(out.begin(), out.end(),
              [](const Monomial& a, const Monomial& b) { return monomial_cmp(a, b) < 0; });
}

const FreeCGA::Basis& FreeCGA::degree_cache(int n) const {
    if (n > cap_) throw CapError("degree " + std::to_string(n) + " exceeds cap " + std::to_string(cap_));
    if (n < 0) throw Error("negative degree");
    std::lock_guard<std::mutex> lock(mu_);
    int64_t key = int64_t(n) * 4096;
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
    auto basis = std::make_unique<Basis>();
    enumerate(n, std::nullopt, basis->monos);
    for (int32_t i = 0; i < int32_t(basis->monos.size()); ++i) basis->index.emplace(basis->monos[size_t(i)], i);
    auto& ref = *basis;
    cache_.emplace(key, std::move(basis));
    return ref;
}

const FreeCGA::Basis& FreeCGA::slice_cache(int n, int p) const {
    if (n > cap_) throw CapError("degree " + std::to_string(n) + " exceeds cap " + std::to_string(cap_));
    if (n < 0) throw Error("negative degree");
    std::lock_guard<std::mutex> lock(mu_);
    int64_t key = int64_t(n) * 4096 + p + 1;
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
    auto basis = std::make_unique<Basis>();
    if (p >= 0) enumerate(n, p, basis->monos);
    for (int32_t i = 0; i < int32_t(basis->monos.size()); ++i) basis->index.emplace(basis->monos[size_t(i)], i);
    auto& ref = *basis;
    cache_.emplace(key, std::move(basis));
    return ref;
}

const std::vector<Monomial>& FreeCGA::degree_basis(int n) const { return degree_cache(n).monos; }
const std::vector<Monomial>& FreeCGA::slice_basis(int n, int p) const { return slice_cache(n, p).monos; }

int32_t FreeCGA::degree_index(const Monomial& m, int n) const {
    const Basis& b = degree_cache(n);
    auto it = b.index.find(m);
    return it == b.index.end() ? -1 : it->second;
}

int32_t FreeCGA::slice_index(const Monomial& m, int n, int p) const {
    const Basis& b = slice_cache(n, p);
    auto it = b.index.find(m);
    return it == b.index.end() ? -1 : it->second;
}

std::optional<std::pair<int, Monomial>> monomial_product(const FreeCGA& alg, const Monomial& a,
                                                         const Monomial& b) {
    // Koszul sign: each odd letter of b moving left past the odd letters of a
    // with a larger generator index flips the sign. Odd squares vanish.
    int sign = 1;
    {
        size_t i = 0;
        int odd_tail = 0;  // odd letters of a with index > current b letter
        // collect odd letters of a (sorted ascending)
        std::vector<int32_t> odd_a;
        for (auto& [g, e] : a.factors)
            if (alg.gen(g).odd()) odd_a.push_back(g);
        for (auto& [g, e] : b.factors) {
            if (!alg.gen(g).odd()) continue;
            // odd square?
            for (int32_t ga : odd_a)
                if (ga == g) return std::nullopt;
            int cnt = 0;
            for (size_t k = odd_a.size(); k-- > 0;) {
                if (odd_a[k] > g)
                    ++cnt;
                else
                    break;
            }
            if (cnt % 2) sign = -sign;
        }
        (void)i;
        (void)odd_tail;
    }
    Monomial out;
    out.factors.reserve(a.factors.size() + b.factors.size());
    size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        if (j == b.factors.size() || (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
            out.factors.push_back(a.factors[i++]);
        } else if (i == a.factors.size() || b.factors[j].first < a.factors[i].first) {
            out.factors.push_back(b.factors[j++]);
        } else {
            int32_t g = a.factors[i].first;
            int32_t e = a.factors[i].second + b.factors[j].second;
            if (alg.gen(g).odd()) return std::nullopt;  // odd square (also caught above)
            out.factors.emplace_back(g, e);
            ++i;
            ++j;
        }
    }
    return std::make_pair(sign, std::move(out));
}

}  // namespace sullivan
