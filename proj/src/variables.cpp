#include "yv/variables.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace yv {

namespace {

struct Registry {
    std::vector<std::string> names;
    std::unordered_map<std::string, int> ids;
    std::mutex mtx;

    Registry() {
        // h must be id 0; the rest are the canonical spectral/aux variables
        // in a fixed order so ids are reproducible across runs.
        static const char* canonical[] = {"h",  "z",  "w",  "u",  "v",  "u0", "z0", "z2",
                                          "u1", "u2", "u3", "u4", "v1", "v2", "vx"};
        for (const char* n : canonical) {
            ids.emplace(n, static_cast<int>(names.size()));
            names.emplace_back(n);
        }
    }
};

Registry& reg() {
    static Registry r;
    return r;
}

}  // namespace

int var_id(const std::string& name) {
    auto& r = reg();
    std::lock_guard<std::mutex> lock(r.mtx);
    auto it = r.ids.find(name);
    if (it != r.ids.end()) return it->second;
    int id = static_cast<int>(r.names.size());
    r.ids.emplace(name, id);
    r.names.push_back(name);
    return id;
}

const std::string& var_name(int id) {
    auto& r = reg();
    std::lock_guard<std::mutex> lock(r.mtx);
    if (id < 0 || id >= static_cast<int>(r.names.size()))
        throw std::out_of_range("var_name: unknown variable id");
    return r.names[id];
}

int num_registered_vars() {
    auto& r = reg();
    std::lock_guard<std::mutex> lock(r.mtx);
    return static_cast<int>(r.names.size());
}

LinForm LinForm::var(int id, const Rational& coeff) {
    LinForm f;
    f.add(id, coeff);
    return f;
}

LinForm LinForm::h_term(const Rational& coeff) { return var(kVarH, coeff); }

LinForm& LinForm::add(int id, const Rational& coeff) {
    if (coeff == 0) return *this;
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        if (it->first == id) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
            return *this;
        }
    }
    terms_.emplace_back(id, coeff);
    return *this;
}

LinForm LinForm::operator+(const LinForm& o) const {
    LinForm f = *this;
    for (const auto& [id, c] : o.terms_) f.add(id, c);
    return f;
}

LinForm LinForm::operator-(const LinForm& o) const {
    LinForm f = *this;
    for (const auto& [id, c] : o.terms_) f.add(id, -c);
    return f;
}

LinForm LinForm::operator-() const {
    LinForm f;
    for (const auto& [id, c] : terms_) f.terms_.emplace_back(id, -c);
    return f;
}

LinForm LinForm::scaled(const Rational& s) const {
    if (s == 0) return LinForm();
    LinForm f;
    for (const auto& [id, c] : terms_) f.terms_.emplace_back(id, c * s);
    return f;
}

Rational LinForm::coeff(int id) const {
    for (const auto& [v, c] : terms_)
        if (v == id) return c;
    return Rational(0);
}

bool LinForm::operator==(const LinForm& o) const {
    // Order-insensitive value comparison.
    if (terms_.size() != o.terms_.size()) return false;
    for (const auto& [id, c] : terms_)
        if (o.coeff(id) != c) return false;
    return true;
}

std::string LinForm::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [id, c] : terms_) {
        if (c > 0 && !first) s += "+";
        if (c == -1)
            s += "-";
        else if (c != 1)
            s += to_string(c) + "*";
        s += var_name(id);
        first = false;
    }
    return s;
}

std::string LinForm::key() const {
    std::string s;
    for (const auto& [id, c] : terms_) s += std::to_string(id) + ":" + to_string(c) + ";";
    return s;
}

}  // namespace yv
