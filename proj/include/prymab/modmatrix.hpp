#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "prymab/errors.hpp"

namespace prymab {

/// A residue class mod N, stored as its representative in [0, N).
class Residue {
public:
    Residue() = default;
    Residue(long long value, long long modulus) : mod_(modulus) {
        if (modulus < 2) throw validation_error(validation_error::kind::parse, "modulus must be >= 2");
        val_ = value % modulus;
        if (val_ < 0) val_ += modulus;
    }

    long long value() const { return val_; }
    long long modulus() const { return mod_; }

    Residue operator+(const Residue& o) const { check(o); return Residue(val_ + o.val_, mod_); }
    Residue operator-(const Residue& o) const { check(o); return Residue(val_ - o.val_, mod_); }
    Residue operator*(const Residue& o) const { check(o); return Residue(val_ * o.val_, mod_); }
    bool operator==(const Residue& o) const { return val_ == o.val_ && mod_ == o.mod_; }
    bool operator!=(const Residue& o) const { return !(*this == o); }

private:
    void check(const Residue& o) const {
        if (mod_ != o.mod_)
            throw validation_error(validation_error::kind::mixed_ambient, "mixed moduli in residue arithmetic");
    }
    long long val_ = 0;
    long long mod_ = 2;
};

/// Dense matrix over Z/N, row-major, entries in [0, N).
struct ModMatrix {
    long long modulus = 2;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<long long> entries;

    ModMatrix() = default;
    ModMatrix(long long n, std::size_t r, std::size_t c)
        : modulus(n), rows(r), cols(c), entries(r * c, 0) {
        if (n < 2) throw validation_error(validation_error::kind::parse, "modulus must be >= 2");
    }

    static ModMatrix from_rows(long long n, const std::vector<std::vector<long long>>& rws) {
        std::size_t c = rws.empty() ? 0 : rws.front().size();
        ModMatrix m(n, rws.size(), c);
        for (std::size_t i = 0; i < rws.size(); ++i) {
            if (rws[i].size() != c)
                throw validation_error(validation_error::kind::parse, "ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = ((rws[i][j] % n) + n) % n;
        }
        return m;
    }

    long long& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    long long at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    Residue entry(std::size_t i, std::size_t j) const { return Residue(at(i, j), modulus); }

    std::vector<long long> row(std::size_t i) const {
        return std::vector<long long>(entries.begin() + i * cols, entries.begin() + (i + 1) * cols);
    }

    std::vector<long long> column(std::size_t j) const {
        std::vector<long long> c(rows);
        for (std::size_t i = 0; i < rows; ++i) c[i] = at(i, j);
        return c;
    }

    bool operator==(const ModMatrix& o) const {
        return modulus == o.modulus && rows == o.rows && cols == o.cols && entries == o.entries;
    }
};

namespace detail {

// extended gcd: returns g, sets u,v with u*a + v*b = g.
inline long long xgcd(long long a, long long b, long long& u, long long& v) {
    long long old_r = a, r = b, old_u = 1, uu = 0, old_v = 0, vv = 1;
    while (r != 0) {
        long long q = old_r / r;
        long long t = old_r - q * r; old_r = r; r = t;
        t = old_u - q * uu; old_u = uu; uu = t;
        t = old_v - q * vv; old_v = vv; vv = t;
    }
    u = old_u; v = old_v;
    return old_r;
}

inline long long pos_mod(long long a, long long n) {
    long long r = a % n;
    return r < 0 ? r + n : r;
}

} // namespace detail

/// Canonical representative of the row span of M over Z/N: two matrices have
/// equal row spans iff their forms are identical.  Computed as the Hermite
/// normal form of the integer row lattice spanned by the rows of M together
/// with N*e_j for every coordinate j, reduced mod N with zero rows dropped.
/// Since the lattice contains N*Z^s, every intermediate entry can be kept in
/// [0, N], so the whole computation runs in word-size integers.
inline ModMatrix howell_form(const ModMatrix& m) {
    using detail::pos_mod;
    const long long n = m.modulus;
    const std::size_t s = m.cols;

    std::vector<std::vector<long long>> work;
    for (std::size_t i = 0; i < m.rows; ++i) {
        auto r = m.row(i);
        bool nonzero = false;
        for (auto& e : r) { e = pos_mod(e, n); nonzero |= (e != 0); }
        if (nonzero) work.push_back(std::move(r));
    }
    for (std::size_t j = 0; j < s; ++j) {
        std::vector<long long> r(s, 0);
        r[j] = n; // lattice generator N*e_j; pivots therefore divide N
        work.push_back(std::move(r));
    }

    std::size_t top = 0;
    for (std::size_t col = 0; col < s && top < work.size(); ++col) {
        std::size_t piv = top;
        while (piv < work.size() && work[piv][col] == 0) ++piv;
        if (piv == work.size()) continue;
        std::swap(work[top], work[piv]);

        for (std::size_t i = top + 1; i < work.size(); ++i) {
            if (work[i][col] == 0) continue;
            long long a = work[top][col], b = work[i][col], u, v;
            long long g = detail::xgcd(a, b, u, v);
            long long am = a / g, bm = b / g;
            // [[u,v],[bm,-am]] has determinant -1, so the lattice is preserved.
            for (std::size_t k = col; k < s; ++k) {
                long long x = work[top][k], y = work[i][k];
                long long nx = u * x + v * y;
                long long ny = bm * x - am * y;
                work[top][k] = (k == col) ? g : pos_mod(nx, n);
                work[i][k] = pos_mod(ny, n);
            }
        }
        // entries above the pivot end up in [0, pivot)
        long long g = work[top][col];
        for (std::size_t i = 0; i < top; ++i) {
            long long q = work[i][col] / g;
            if (q == 0) continue;
            for (std::size_t k = col; k < s; ++k)
                work[i][k] = pos_mod(work[i][k] - q * work[top][k], n);
        }
        ++top;
    }

    std::vector<std::vector<long long>> out;
    for (std::size_t i = 0; i < top; ++i) {
        auto& r = work[i];
        bool nonzero = false;
        for (auto& e : r) { e = pos_mod(e, n); nonzero |= (e != 0); }
        if (nonzero) out.push_back(r);
    }
    ModMatrix h(n, out.size(), s);
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = 0; j < s; ++j) h.at(i, j) = out[i][j];
    return h;
}

} // namespace prymab
