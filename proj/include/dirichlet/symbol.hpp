#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "dirichlet/numeric.hpp"

namespace dirichlet {

enum class SymbolKind { Constant, UnitAffine, OtherAffine, NonAffine };

std::string_view to_string(SymbolKind kind);

/**
 * Structural class of a symbol after normalization:
 *   Constant     phi = b          (a = 0)
 *   UnitAffine   phi = z + b      (a = 1)
 *   OtherAffine  phi = a z + b    (a != 0, 1)
 *   NonAffine    anything else (a, b unused)
 */
struct SymbolClass {
    SymbolKind kind = SymbolKind::NonAffine;
    Complex a;
    Complex b;
};

/**
 * SymbolMap: entire symbol phi as an expression tree over complex constants,
 * the variable z, +, * and exp.
 *
 * Classification is structural: the tree is normalized to a polynomial in z
 * when it contains no exp(...) of a non-constant argument; anything else is
 * NonAffine. Cancellations hidden inside exp are not detected.
 */
class SymbolMap {
public:
    /// Grammar: z, i, real/imaginary literals (2, 0.5, 3i, 1e-3), + - * ^n, exp(...), parentheses.
    static SymbolMap parse(std::string_view text);

    static SymbolMap constant(Complex c);
    static SymbolMap identity();
    static SymbolMap affine(Complex a, Complex b);
    static SymbolMap shift(Complex b) { return affine(1.0, b); }

    friend SymbolMap operator+(const SymbolMap& lhs, const SymbolMap& rhs);
    friend SymbolMap operator*(const SymbolMap& lhs, const SymbolMap& rhs);
    friend SymbolMap exp(const SymbolMap& arg);

    Complex operator()(Complex z) const;

    /// z - phi(z).
    Complex psi(Complex z) const { return z - (*this)(z); }

    const SymbolClass& symbol_class() const { return class_; }

    std::string to_string() const;

    struct Node;

private:
    explicit SymbolMap(std::shared_ptr<const Node> root);

    std::shared_ptr<const Node> root_;
    SymbolClass class_;
};

}  // namespace dirichlet
