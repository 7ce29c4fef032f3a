#include "patrace/matrix.hpp"

#include <utility>

namespace patrace {

namespace {

template <typename T>
void swap_rows(Matrix<T>& m, std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t j = 0; j < m.cols(); ++j)
        std::swap(m(a, j), m(b, j));
}

Polynomial lcm(const Polynomial& a, const Polynomial& b)
{
    return exact_div(a * b, gcd(a, b)).monic();
}

}  // namespace

Rational det(Matrix<Rational> m)
{
    if (!m.square())
        throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    Rational result(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && m(pivot, c) == 0)
            ++pivot;
        if (pivot == n)
            return Rational(0);
        if (pivot != c) {
            swap_rows(m, pivot, c);
            result = -result;
        }
        result *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m(r, c) == 0)
                continue;
            const Rational f = m(r, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j)
                m(r, j) -= f * m(c, j);
        }
    }
    return result;
}

RationalFunc det_rf(const Matrix<RationalFunc>& in)
{
    if (!in.square())
        throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = in.rows();
    if (n == 0)
        return RationalFunc(Rational(1));

    // Scale each row by the lcm of its denominators; det picks up their product.
    Matrix<Polynomial> m(n, n);
    Polynomial scale(Rational(1));
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial row_den(Rational(1));
        for (std::size_t j = 0; j < n; ++j)
            row_den = lcm(row_den, in(i, j).den());
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = in(i, j).num() * exact_div(row_den, in(i, j).den());
        scale = scale * row_den;
    }

    bool negate = false;
    Polynomial prev(Rational(1));
    for (std::size_t c = 0; c + 1 < n; ++c) {
        std::size_t pivot = n;
        for (std::size_t r = c; r < n; ++r)
            if (!m(r, c).is_zero() && (pivot == n || m(r, c).degree() < m(pivot, c).degree()))
                pivot = r;
        if (pivot == n)
            return RationalFunc();
        if (pivot != c) {
            swap_rows(m, pivot, c);
            negate = !negate;
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            for (std::size_t j = c + 1; j < n; ++j)
                m(r, j) = exact_div(m(c, c) * m(r, j) - m(r, c) * m(c, j), prev);
            m(r, c) = Polynomial();
        }
        prev = m(c, c);
    }
    Polynomial d = m(n - 1, n - 1);
    if (negate)
        d = -d;
    return RationalFunc(std::move(d), std::move(scale));
}

Matrix<Rational> solve(Matrix<Rational> m, Matrix<Rational> rhs)
{
    if (!m.square() || rhs.rows() != m.rows())
        throw std::invalid_argument("solve: dimension mismatch");
    const std::size_t n = m.rows();
    const std::size_t k = rhs.cols();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && m(pivot, c) == 0)
            ++pivot;
        if (pivot == n)
            throw SingularSystem("singular linear system");
        swap_rows(m, pivot, c);
        swap_rows(rhs, pivot, c);
        const Rational inv = Rational(1) / m(c, c);
        for (std::size_t j = c; j < n; ++j)
            m(c, j) *= inv;
        for (std::size_t j = 0; j < k; ++j)
            rhs(c, j) *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m(r, c) == 0)
                continue;
            const Rational f = m(r, c);
            for (std::size_t j = c; j < n; ++j)
                m(r, j) -= f * m(c, j);
            for (std::size_t j = 0; j < k; ++j)
                rhs(r, j) -= f * rhs(c, j);
        }
    }
    return rhs;
}

}  // namespace patrace
