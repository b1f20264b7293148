#pragma once

#include <string>
#include <utility>
#include <vector>

#include "yv/rational.hpp"

namespace yv {

// Global variable registry. Ids are stable for the lifetime of the process.
// Id 0 is always the deformation variable h; everything else is a spectral
// or auxiliary expansion variable. The windowed-series layer only supports
// ids below kMaxSeriesVars; the polynomial layer has no such limit.
constexpr int kVarH = 0;
constexpr int kMaxSeriesVars = 16;

int var_id(const std::string& name);        // registers on first use
const std::string& var_name(int id);
int num_registered_vars();

inline bool is_h(int id) { return id == kVarH; }

// Rational-linear combination of variables, e.g. z - w + (3/2) h.
// Term order records how the form was written; the first spectral variable
// is the expansion direction for negative powers.
class LinForm {
public:
    LinForm() = default;
    static LinForm var(int id, const Rational& coeff = Rational(1));
    static LinForm h_term(const Rational& coeff);

    LinForm& add(int id, const Rational& coeff);  // merges, keeps position
    LinForm operator+(const LinForm& o) const;
    LinForm operator-(const LinForm& o) const;
    LinForm operator-() const;
    LinForm scaled(const Rational& s) const;

    bool is_zero() const { return terms_.empty(); }
    // First variable with nonzero coefficient; -1 when the form is zero.
    int dominant() const { return terms_.empty() ? -1 : terms_[0].first; }
    Rational coeff(int id) const;
    const std::vector<std::pair<int, Rational>>& terms() const { return terms_; }

    bool operator==(const LinForm& o) const;
    std::string str() const;
    // Stable key for memoization maps.
    std::string key() const;

private:
    std::vector<std::pair<int, Rational>> terms_;
};

}  // namespace yv
