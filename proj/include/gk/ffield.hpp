#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gk/field.hpp"

namespace gk {

// F_p or F_p[s]/(s^2-d) with table arithmetic; element k <-> a + b s, k = a + b p.
class FiniteField {
public:
    // nullopt when F is not a finite field presentation
    static std::optional<FiniteField> from(const FieldPtr& F);

    int q() const { return q_; }
    int p() const { return p_; }
    int add(int a, int b) const { return add_[a * q_ + b]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }
    int neg(int a) const { return neg_[a]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int inv(int a) const { return inv_[a]; }

    int encode(const Elem& e) const;
    Elem decode(int k) const;
    const FieldPtr& field() const { return F_; }

private:
    FieldPtr F_;
    int p_ = 0, q_ = 0, d_ = 0;
    std::vector<int> add_, mul_, neg_, inv_;
};

}  // namespace gk
