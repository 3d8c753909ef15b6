#include "localinv/linalg.hpp"

namespace localinv {

namespace {

void make_primitive(SparseVector& v) {
    if (v.empty()) return;
    Integer g = 0;
    for (const auto& [col, x] : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    if (v.front().second < 0) g = -g;
    if (g != 1) {
        for (auto& entry : v) mpz_divexact(entry.second.get_mpz_t(), entry.second.get_mpz_t(), g.get_mpz_t());
    }
}

/// a * v - b * p, dropping cancelled entries.
SparseVector combine(const Integer& a, const SparseVector& v, const Integer& b, const SparseVector& p) {
    SparseVector out;
    out.reserve(v.size() + p.size());
    std::size_t i = 0;
    std::size_t j = 0;
    Integer x;
    while (i < v.size() || j < p.size()) {
        if (j == p.size() || (i < v.size() && v[i].first < p[j].first)) {
            out.emplace_back(v[i].first, a * v[i].second);
            ++i;
        } else if (i == v.size() || p[j].first < v[i].first) {
            out.emplace_back(p[j].first, -b * p[j].second);
            ++j;
        } else {
            x = a * v[i].second;
            mpz_submul(x.get_mpz_t(), b.get_mpz_t(), p[j].second.get_mpz_t());
            if (x != 0) out.emplace_back(v[i].first, x);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

bool SparseEchelon::insert(SparseVector v) {
    make_primitive(v);
    Integer g;
    while (!v.empty()) {
        const auto it = pivot_row_.find(v.front().first);
        if (it == pivot_row_.end()) {
            pivot_row_.emplace(v.front().first, rows_.size());
            rows_.push_back(std::move(v));
            return true;
        }
        const SparseVector& p = rows_[it->second];
        mpz_gcd(g.get_mpz_t(), p.front().second.get_mpz_t(), v.front().second.get_mpz_t());
        const Integer a = p.front().second / g;
        const Integer b = v.front().second / g;
        v = combine(a, v, b, p);
        make_primitive(v);
    }
    return false;
}

SparseVector to_sparse(const std::vector<Scalar>& row) {
    Integer lcm = 1;
    for (const auto& x : row) {
        if (x != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    }
    SparseVector out;
    for (std::size_t c = 0; c < row.size(); ++c) {
        if (row[c] == 0) continue;
        Integer v = lcm / row[c].get_den();
        v *= row[c].get_num();
        out.emplace_back(c, std::move(v));
    }
    return out;
}

std::size_t rank(const std::vector<std::vector<Scalar>>& rows) {
    SparseEchelon e;
    for (const auto& r : rows) e.insert(to_sparse(r));
    return e.rank();
}

}  // namespace localinv
