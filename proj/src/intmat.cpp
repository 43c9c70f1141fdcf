#include "solinv/intmat.hpp"

#include <sstream>

namespace solinv {

IntMat matPow(const IntMat& a, unsigned k)
{
    if (a.rows() != a.cols()) throw std::invalid_argument("matPow: matrix must be square");
    IntMat result = IntMat::Identity(a.rows(), a.cols());
    IntMat base = a;
    unsigned e = k;
    while (e > 0) {
        if (e & 1u) result = IntMat(result * base);
        base = IntMat(base * base);
        e >>= 1u;
    }
    return result;
}

Int determinant(const IntMat& a)
{
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix must be square");
    const Index n = a.rows();
    if (n == 0) return 1;

    // Bareiss fraction-free elimination; every division below is exact.
    IntMat m = a;
    Int prev = 1;
    int sign = 1;
    for (Index k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            Index p = -1;
            for (Index i = k + 1; i < n; ++i) {
                if (m(i, k) != 0) { p = i; break; }
            }
            if (p < 0) return 0;
            m.row(k).swap(m.row(p));
            sign = -sign;
        }
        for (Index i = k + 1; i < n; ++i) {
            for (Index j = k + 1; j < n; ++j) {
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

int rankQ(const IntMat& a)
{
    IntMat m = a;
    const Index rows = m.rows(), cols = m.cols();
    int rank = 0;
    Index row = 0;
    for (Index col = 0; col < cols && row < rows; ++col) {
        Index p = -1;
        for (Index i = row; i < rows; ++i) {
            if (m(i, col) != 0) { p = i; break; }
        }
        if (p < 0) continue;
        m.row(row).swap(m.row(p));
        for (Index i = row + 1; i < rows; ++i) {
            if (m(i, col) == 0) continue;
            // integer row combination keeps everything exact
            Int pivot = m(row, col), entry = m(i, col);
            Int g = gcdInt(pivot, entry);
            Int fp = pivot / g, fe = entry / g;
            for (Index j = col; j < cols; ++j) {
                m(i, j) = m(i, j) * fp - m(row, j) * fe;
            }
        }
        ++row;
        ++rank;
    }
    return rank;
}

std::vector<Int> charPoly(const IntMat& a)
{
    if (a.rows() != a.cols()) throw std::invalid_argument("charPoly: matrix must be square");
    const Index n = a.rows();
    std::vector<Int> c(static_cast<size_t>(n) + 1);
    c[static_cast<size_t>(n)] = 1;
    if (n == 0) return c;

    // Faddeev-LeVerrier: M_1 = A, c_{n-k} = -tr(M_k)/k, M_{k+1} = A(M_k + c_{n-k} I).
    IntMat m = a;
    for (Index k = 1; k <= n; ++k) {
        Int tr = 0;
        for (Index i = 0; i < n; ++i) tr += m(i, i);
        Int ck = -tr / k; // exact by construction
        c[static_cast<size_t>(n - k)] = ck;
        if (k < n) {
            IntMat shifted = m;
            for (Index i = 0; i < n; ++i) shifted(i, i) += ck;
            m = IntMat(a * shifted);
        }
    }
    return c;
}

Int evalPoly(const std::vector<Int>& coeffs, const Int& x)
{
    Int acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::optional<RatMat> solveRational(const IntMat& a, const IntMat& b)
{
    if (a.rows() != a.cols()) throw std::invalid_argument("solveRational: matrix must be square");
    if (a.rows() != b.rows()) throw std::invalid_argument("solveRational: dimension mismatch");
    const Index n = a.rows(), w = b.cols();

    RatMat aug(n, n + w);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) aug(i, j) = Rat(a(i, j));
        for (Index j = 0; j < w; ++j) aug(i, n + j) = Rat(b(i, j));
    }
    for (Index col = 0; col < n; ++col) {
        Index p = -1;
        for (Index i = col; i < n; ++i) {
            if (aug(i, col) != 0) { p = i; break; }
        }
        if (p < 0) return std::nullopt;
        aug.row(col).swap(aug.row(p));
        Rat pivot = aug(col, col);
        for (Index j = col; j < n + w; ++j) aug(col, j) /= pivot;
        for (Index i = 0; i < n; ++i) {
            if (i == col || aug(i, col) == 0) continue;
            Rat f = aug(i, col);
            for (Index j = col; j < n + w; ++j) aug(i, j) -= f * aug(col, j);
        }
    }
    RatMat x(n, w);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < w; ++j) x(i, j) = aug(i, n + j);
    return x;
}

bool isIntegral(const RatMat& m)
{
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            if (denominator(m(i, j)) != 1) return false;
    return true;
}

IntMat toIntegral(const RatMat& m)
{
    IntMat r(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (denominator(m(i, j)) != 1) throw std::invalid_argument("toIntegral: entry not integral");
            r(i, j) = numerator(m(i, j));
        }
    }
    return r;
}

IntMat hermiteBasis(const IntMat& cols)
{
    const Index n = cols.rows();
    IntMat h = cols;

    // column-style Hermite reduction, top row down
    for (Index i = 0; i < n; ++i) {
        // clear row i to a single nonzero entry at column i by gcd column ops
        for (;;) {
            Index p = -1;
            Int best = 0;
            for (Index j = i; j < h.cols(); ++j) {
                if (h(i, j) != 0 && (p < 0 || absInt(h(i, j)) < best)) {
                    p = j;
                    best = absInt(h(i, j));
                }
            }
            if (p < 0) throw std::invalid_argument("hermiteBasis: lattice not full rank");
            h.col(i).swap(h.col(p));
            bool clean = true;
            for (Index j = i + 1; j < h.cols(); ++j) {
                if (h(i, j) == 0) continue;
                Int q = h(i, j) / h(i, i);
                h.col(j) -= q * h.col(i);
                if (h(i, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h(i, i) < 0) h.col(i) = -h.col(i);
        // reduce earlier columns against the pivot
        for (Index j = 0; j < i; ++j) {
            Int q = h(i, j) / h(i, i);
            if (h(i, j) - q * h(i, i) < 0) q -= 1; // canonical residues in [0, pivot)
            if (q != 0) h.col(j) -= q * h.col(i);
        }
    }
    return h.leftCols(n);
}

IntMat parseMatrix(const std::string& text)
{
    std::vector<std::vector<Int>> rows;
    size_t i = 0;
    auto skipWs = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto expect = [&](char c) {
        skipWs();
        if (i >= text.size() || text[i] != c)
            throw std::invalid_argument("parseMatrix: expected '" + std::string(1, c) + "' in " + text);
        ++i;
    };
    expect('[');
    skipWs();
    if (i < text.size() && text[i] == ']') {
        ++i;
        return IntMat(0, 0);
    }
    for (;;) {
        expect('[');
        std::vector<Int> row;
        skipWs();
        if (i < text.size() && text[i] == ']') {
            ++i;
        } else {
            for (;;) {
                skipWs();
                size_t start = i;
                if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                if (i == start) throw std::invalid_argument("parseMatrix: expected integer in " + text);
                row.emplace_back(text.substr(start, i - start));
                skipWs();
                if (i < text.size() && text[i] == ',') { ++i; continue; }
                expect(']');
                break;
            }
        }
        if (!rows.empty() && rows.front().size() != row.size())
            throw std::invalid_argument("parseMatrix: ragged rows in " + text);
        rows.push_back(std::move(row));
        skipWs();
        if (i < text.size() && text[i] == ',') { ++i; continue; }
        expect(']');
        break;
    }
    skipWs();
    if (i != text.size()) throw std::invalid_argument("parseMatrix: trailing characters in " + text);

    const Index r = static_cast<Index>(rows.size());
    const Index c = rows.empty() ? 0 : static_cast<Index>(rows[0].size());
    IntMat m(r, c);
    for (Index a = 0; a < r; ++a)
        for (Index b = 0; b < c; ++b)
            m(a, b) = rows[static_cast<size_t>(a)][static_cast<size_t>(b)];
    return m;
}

std::string formatMatrix(const IntMat& m)
{
    if (m.rows() == 0 || m.cols() == 0) return "[]";
    std::ostringstream out;
    out << '[';
    for (Index i = 0; i < m.rows(); ++i) {
        if (i) out << ',';
        out << '[';
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << m(i, j);
        }
        out << ']';
    }
    out << ']';
    return out.str();
}

} // namespace solinv
