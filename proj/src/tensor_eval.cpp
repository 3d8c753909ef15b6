#include "localinv/tensor_eval.hpp"

#include <stdexcept>

#include "localinv/rational.hpp"

namespace localinv {

void Endomorphism::validate() const {
    const auto n = dims.total();
    if (entries.rows() != n || entries.cols() != n) {
        throw std::invalid_argument("endomorphism: expected " + std::to_string(n) + "x" + std::to_string(n) +
                                    " entries, got " + std::to_string(entries.rows()) + "x" +
                                    std::to_string(entries.cols()));
    }
}

void EndoTuple::validate() const {
    for (std::size_t j = 0; j < members.size(); ++j) {
        if (!(members[j].dims == dims)) {
            throw std::invalid_argument("endotuple: member " + std::to_string(j + 1) + " has different dims");
        }
        members[j].validate();
    }
}

DimensionVector SimpleEndo::dims() const {
    std::vector<int> d;
    for (const auto& f : factors) {
        if (!f.square()) throw std::invalid_argument("simple endomorphism factor is not square");
        d.push_back(static_cast<int>(f.rows()));
    }
    return DimensionVector(std::move(d));
}

DimensionVector LocalGroupElement::dims() const {
    std::vector<int> d;
    for (const auto& f : factors) {
        if (!f.square()) throw std::invalid_argument("group element factor is not square");
        d.push_back(static_cast<int>(f.rows()));
    }
    return DimensionVector(std::move(d));
}

namespace {

Matrix kron_all(const std::vector<Matrix>& factors) {
    Matrix out = Matrix::identity(1);
    for (const auto& f : factors) out = kron(out, f);
    return out;
}

Matrix random_matrix(std::size_t n, SeededRng& rng) {
    Matrix out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) out(r, c) = rng.small_rational();
    }
    return out;
}

}  // namespace

Endomorphism kron_expand(const SimpleEndo& s) { return Endomorphism{s.dims(), kron_all(s.factors)}; }

EndoTuple kron_expand(std::span<const SimpleEndo> tuple) {
    if (tuple.empty()) throw std::invalid_argument("kron_expand: empty tuple");
    EndoTuple out{tuple.front().dims(), {}};
    for (const auto& s : tuple) out.members.push_back(kron_expand(s));
    out.validate();
    return out;
}

EndoTuple identity_endotuple(const DimensionVector& d, int m) {
    EndoTuple out{d, {}};
    for (int j = 0; j < m; ++j) out.members.push_back(Endomorphism{d, Matrix::identity(d.total())});
    return out;
}

EndoTuple random_endotuple(const DimensionVector& d, int m, std::uint64_t seed) {
    SeededRng rng(seed);
    EndoTuple out{d, {}};
    for (int j = 0; j < m; ++j) out.members.push_back(Endomorphism{d, random_matrix(d.total(), rng)});
    return out;
}

std::vector<SimpleEndo> random_simple_endos(const DimensionVector& d, int m, std::uint64_t seed) {
    SeededRng rng(seed);
    std::vector<SimpleEndo> out(static_cast<std::size_t>(m));
    for (auto& s : out) {
        for (std::size_t i = 0; i < d.factors(); ++i) {
            s.factors.push_back(random_matrix(static_cast<std::size_t>(d[i]), rng));
        }
    }
    return out;
}

LocalGroupElement random_group_element(const DimensionVector& d, std::uint64_t seed) {
    SeededRng rng(seed);
    LocalGroupElement out;
    for (std::size_t i = 0; i < d.factors(); ++i) {
        const auto n = static_cast<std::size_t>(d[i]);
        int attempts = 0;
        Matrix g = random_matrix(n, rng);
        while (determinant(g) == 0) {
            if (++attempts >= 64) throw std::runtime_error("random_group_element: no invertible draw");
            g = random_matrix(n, rng);
        }
        out.factors.push_back(std::move(g));
    }
    return out;
}

EndoTuple local_conjugate(const EndoTuple& inputs, const LocalGroupElement& g) {
    if (!(g.dims() == inputs.dims)) throw std::invalid_argument("local_conjugate: group element dims differ");
    std::vector<Matrix> inverses;
    for (const auto& f : g.factors) inverses.push_back(inverse(f));
    const Matrix big = kron_all(g.factors);
    const Matrix big_inv = kron_all(inverses);
    EndoTuple out{inputs.dims, {}};
    for (const auto& a : inputs.members) out.members.push_back(Endomorphism{a.dims, big * a.entries * big_inv});
    return out;
}

Scalar evaluate_simple(const TraceMonomial& t, std::span<const SimpleEndo> inputs) {
    t.validate();
    if (t.degree() == 0) return Scalar(1);
    if (static_cast<std::size_t>(t.M.m) > inputs.size()) {
        for (int label : t.M.entries) {
            if (static_cast<std::size_t>(label) > inputs.size()) {
                throw std::invalid_argument("evaluate_simple: label " + std::to_string(label) + " but only " +
                                            std::to_string(inputs.size()) + " inputs");
            }
        }
    }
    const auto n = t.factors();
    for (const auto& s : inputs) {
        if (s.factors.size() != n) throw std::invalid_argument("evaluate_simple: input factor count mismatch");
    }
    for (std::size_t i = 1; i < inputs.size(); ++i) {
        if (!(inputs[i].dims() == inputs[0].dims())) throw std::invalid_argument("evaluate_simple: input dims differ");
    }
    Scalar value = 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& cycle : cycle_decomposition(t.sigma[i]).cycles) {
            Matrix acc = inputs[t.M.entries[cycle[0] - 1] - 1].factors[i];
            for (std::size_t j = 1; j < cycle.size(); ++j) {
                acc = acc * inputs[t.M.entries[cycle[j] - 1] - 1].factors[i];
            }
            value *= trace(acc);
            if (value == 0) return value;
        }
    }
    return value;
}

Scalar evaluate(const TraceMonomial& t, const EndoTuple& inputs) {
    t.validate();
    inputs.validate();
    const auto n = t.factors();
    if (n != inputs.dims.factors()) {
        throw std::invalid_argument("evaluate: monomial has " + std::to_string(n) + " tensor factors, inputs have " +
                                    std::to_string(inputs.dims.factors()));
    }
    for (int label : t.M.entries) {
        if (static_cast<std::size_t>(label) > inputs.size()) {
            throw std::invalid_argument("evaluate: label " + std::to_string(label) + " but only " +
                                        std::to_string(inputs.size()) + " inputs");
        }
    }
    const std::size_t k = t.degree();
    if (k == 0) return Scalar(1);
    const std::size_t dim = inputs.dims.total();

    // clear denominators per member so the inner loop is integer-only
    const auto scaled_tuple = clear_denominators(inputs);
    const auto& scaled = scaled_tuple.entries;
    const auto& denominators = scaled_tuple.denominators;

    // digit tables: component of multi-index R on factor i
    std::vector<std::size_t> stride(n);
    std::size_t s = 1;
    for (std::size_t i = n; i-- > 0;) {
        stride[i] = s;
        s *= static_cast<std::size_t>(inputs.dims[i]);
    }
    std::vector<std::vector<std::size_t>> part(n, std::vector<std::size_t>(dim));
    for (std::size_t i = 0; i < n; ++i) {
        const auto di = static_cast<std::size_t>(inputs.dims[i]);
        for (std::size_t r = 0; r < dim; ++r) part[i][r] = ((r / stride[i]) % di) * stride[i];
    }
    std::vector<std::vector<std::size_t>> succ(n, std::vector<std::size_t>(k));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t p = 0; p < k; ++p) succ[i][p] = t.sigma[i](p);
    }
    std::vector<const std::vector<Integer>*> member(k);
    for (std::size_t p = 0; p < k; ++p) member[p] = &scaled[t.M.entries[p] - 1];

    // row multi-index of each position; the column of p on factor i is the
    // factor-i part of the row of sigma_i(p)
    std::vector<std::size_t> row(k, 0);
    Integer total = 0;
    Integer term;
    while (true) {
        term = 1;
        for (std::size_t p = 0; p < k; ++p) {
            std::size_t col = 0;
            for (std::size_t i = 0; i < n; ++i) col += part[i][row[succ[i][p]]];
            const Integer& x = (*member[p])[row[p] * dim + col];
            if (x == 0) {
                term = 0;
                break;
            }
            term *= x;
        }
        if (term != 0) total += term;
        std::size_t p = 0;
        while (p < k && ++row[p] == dim) row[p++] = 0;
        if (p == k) break;
    }
    Integer den = 1;
    for (int label : t.M.entries) den *= denominators[label - 1];
    Scalar out(total, den);
    out.canonicalize();
    return out;
}

ScaledTuple clear_denominators(const EndoTuple& inputs) {
    ScaledTuple out;
    for (const auto& member : inputs.members) {
        Integer lcm = 1;
        for (const auto& x : member.entries.data()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
        std::vector<Integer> row;
        row.reserve(member.entries.data().size());
        for (const auto& x : member.entries.data()) row.push_back(x.get_num() * (lcm / x.get_den()));
        out.entries.push_back(std::move(row));
        out.denominators.push_back(std::move(lcm));
    }
    return out;
}

Integer identity_value(const TraceMonomial& t, const DimensionVector& d) {
    if (d.factors() != t.factors()) throw std::invalid_argument("identity_value: factor count mismatch");
    Integer out = 1;
    for (std::size_t i = 0; i < t.factors(); ++i) {
        Integer f;
        mpz_ui_pow_ui(f.get_mpz_t(), static_cast<unsigned long>(d[i]),
                      static_cast<unsigned long>(t.sigma[i].cycle_count()));
        out *= f;
    }
    return out;
}

}  // namespace localinv
