#include "gorenstein/rational_matrix.hpp"

#include <stdexcept>

#include "gorenstein/errors.hpp"

namespace gorenstein {

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

std::vector<Rat> RationalMatrix::apply(const std::vector<Rat>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("dimension mismatch");
    std::vector<Rat> y(static_cast<std::size_t>(rows_), Rat(0));
    for (int i = 0; i < rows_; ++i) {
        Rat acc(0);
        for (int j = 0; j < cols_; ++j) {
            const Rat& v = at(i, j);
            if (v != 0) acc += v * x[static_cast<std::size_t>(j)];
        }
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

namespace {

// Denominator-cleared integer copy; rows additionally divided by their
// content. Row scaling leaves the rank unchanged.
std::vector<std::vector<Int>> integerize(const RationalMatrix& a) {
    std::vector<std::vector<Int>> m(static_cast<std::size_t>(a.rows()));
    for (int i = 0; i < a.rows(); ++i) {
        Int lcm = 1;
        for (int j = 0; j < a.cols(); ++j) {
            const Rat& q = a.at(i, j);
            if (q != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
        }
        auto& row = m[static_cast<std::size_t>(i)];
        row.resize(static_cast<std::size_t>(a.cols()));
        Int content = 0;
        for (int j = 0; j < a.cols(); ++j) {
            const Rat& q = a.at(i, j);
            Int v = q.get_num() * (lcm / q.get_den());
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
            row[static_cast<std::size_t>(j)] = std::move(v);
        }
        if (content > 1)
            for (auto& v : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
    }
    return m;
}

}  // namespace

int rank_exact(const RationalMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    auto m = integerize(a);
    const int rows = a.rows(), cols = a.cols();
    int rank = 0;
    Int prev_pivot = 1;
    for (int col = 0; col < cols && rank < rows; ++col) {
        // Pivot: nonzero entry of minimal bit length, for growth control.
        int pivot = -1;
        std::size_t best = 0;
        for (int i = rank; i < rows; ++i) {
            const Int& v = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
            if (v == 0) continue;
            const std::size_t sz = mpz_sizeinbase(v.get_mpz_t(), 2);
            if (pivot < 0 || sz < best) { pivot = i; best = sz; }
        }
        if (pivot < 0) continue;
        std::swap(m[static_cast<std::size_t>(rank)], m[static_cast<std::size_t>(pivot)]);
        const Int& p = m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
        for (int i = rank + 1; i < rows; ++i) {
            auto& row = m[static_cast<std::size_t>(i)];
            const Int factor = row[static_cast<std::size_t>(col)];
            for (int j = col; j < cols; ++j) {
                Int& x = row[static_cast<std::size_t>(j)];
                x = p * x - factor * m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)];
                // Bareiss: division by the previous pivot is exact.
                if (prev_pivot != 1)
                    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev_pivot.get_mpz_t());
            }
        }
        prev_pivot = p;
        ++rank;
    }
    return rank;
}

std::vector<int> rref(RationalMatrix& a) {
    const int rows = a.rows(), cols = a.cols();
    std::vector<int> pivots;
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (a.at(i, col) != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        if (pivot != r)
            for (int j = 0; j < cols; ++j) std::swap(a.at(r, j), a.at(pivot, j));
        const Rat inv = 1 / a.at(r, col);
        for (int j = col; j < cols; ++j) a.at(r, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a.at(i, col) == 0) continue;
            const Rat f = a.at(i, col);
            for (int j = col; j < cols; ++j) a.at(i, j) -= f * a.at(r, j);
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

std::vector<std::vector<Rat>> kernel_exact(const RationalMatrix& a) {
    RationalMatrix e = a;
    const std::vector<int> pivots = rref(e);
    const int cols = a.cols();
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;

    std::vector<std::vector<Rat>> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        std::vector<Rat> v(static_cast<std::size_t>(cols), Rat(0));
        v[static_cast<std::size_t>(free)] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<std::size_t>(pivots[r])] = -e.at(static_cast<int>(r), free);
        basis.push_back(std::move(v));
    }
    for (const auto& v : basis) {
        for (const Rat& y : a.apply(v))
            if (y != 0) throw TheoremViolation("kernel vector fails A v = 0");
    }
    return basis;
}

ModPanel reduce_mod_p(const RationalMatrix& a, std::uint64_t p) {
    ModPanel panel;
    panel.p = p;
    panel.cols = a.cols();
    const auto m = integerize(a);
    panel.rows.resize(static_cast<std::size_t>(a.rows()));
    Int tmp;
    for (int i = 0; i < a.rows(); ++i) {
        auto& row = panel.rows[static_cast<std::size_t>(i)];
        row.resize(static_cast<std::size_t>(a.cols()));
        for (int j = 0; j < a.cols(); ++j) {
            mpz_mod_ui(tmp.get_mpz_t(),
                       m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get_mpz_t(), p);
            row[static_cast<std::size_t>(j)] = tmp.get_ui();
        }
    }
    return panel;
}

int rank_mod_panel(const ModPanel& panel, const std::vector<int>& row_idx) {
    const std::uint64_t p = panel.p;
    const int cols = panel.cols;
    const int rows = static_cast<int>(row_idx.size());
    std::vector<std::vector<std::uint64_t>> r;
    r.reserve(row_idx.size());
    for (int i : row_idx) r.push_back(panel.rows[static_cast<std::size_t>(i)]);
    auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
    };
    auto powmod = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t acc = 1;
        while (e) {
            if (e & 1u) acc = mulmod(acc, b);
            b = mulmod(b, b);
            e >>= 1u;
        }
        return acc;
    };
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < rows; ++i)
            if (r[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        std::swap(r[static_cast<std::size_t>(rank)], r[static_cast<std::size_t>(pivot)]);
        const std::uint64_t inv =
            powmod(r[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)], p - 2);
        for (int i = rank + 1; i < rows; ++i) {
            auto& row = r[static_cast<std::size_t>(i)];
            if (row[static_cast<std::size_t>(col)] == 0) continue;
            const std::uint64_t f = mulmod(row[static_cast<std::size_t>(col)], inv);
            for (int j = col; j < cols; ++j) {
                const std::uint64_t sub =
                    mulmod(f, r[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)]);
                std::uint64_t& x = row[static_cast<std::size_t>(j)];
                x = (x >= sub) ? x - sub : x + p - sub;
            }
        }
        ++rank;
    }
    return rank;
}

int rank_mod_panel(const ModPanel& panel) {
    std::vector<int> all(panel.rows.size());
    for (std::size_t i = 0; i < panel.rows.size(); ++i) all[i] = static_cast<int>(i);
    return rank_mod_panel(panel, all);
}

int rank_mod_p(const RationalMatrix& a, std::uint64_t p) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    return rank_mod_panel(reduce_mod_p(a, p));
}

}  // namespace gorenstein
