#include "brim/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace brim {

namespace {

int key_degree(const RatPoly::Key& k) { return std::accumulate(k.begin(), k.end(), 0); }

void check_key(const RatPoly::Key& key, int arity)
{
    if (static_cast<int>(key.size()) != arity)
        throw std::invalid_argument("exponent tuple arity mismatch");
    for (int e : key)
        if (e < 0)
            throw std::invalid_argument("negative exponent in polynomial term");
}

}  // namespace

RatPoly::RatPoly(int arity) : arity_(arity)
{
    if (arity < 1)
        throw std::invalid_argument("polynomial arity must be positive");
}

RatPoly RatPoly::constant(int arity, const Rat& c)
{
    RatPoly p(arity);
    p.add_term(Key(static_cast<size_t>(arity), 0), c);
    return p;
}

RatPoly RatPoly::variable(int arity, int index)
{
    if (index < 0 || index >= arity)
        throw std::invalid_argument("variable index out of range");
    RatPoly p(arity);
    Key k(static_cast<size_t>(arity), 0);
    k[static_cast<size_t>(index)] = 1;
    p.add_term(k, Rat(1));
    return p;
}

int RatPoly::degree() const
{
    int d = -1;
    for (const auto& [k, c] : terms_)
        d = std::max(d, key_degree(k));
    return d;
}

int RatPoly::degree_in(int var) const
{
    if (var < 0 || var >= arity_)
        throw std::invalid_argument("variable index out of range");
    int d = -1;
    for (const auto& [k, c] : terms_)
        d = std::max(d, k[static_cast<size_t>(var)]);
    return d;
}

Rat RatPoly::coeff(const Key& key) const
{
    check_key(key, arity_);
    auto it = terms_.find(key);
    return it == terms_.end() ? Rat(0) : it->second;
}

void RatPoly::add_term(const Key& key, const Rat& c)
{
    check_key(key, arity_);
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Rat RatPoly::eval(const std::vector<Rat>& point) const
{
    if (static_cast<int>(point.size()) != arity_)
        throw std::invalid_argument("evaluation point arity mismatch");
    Rat total = 0;
    for (const auto& [k, c] : terms_) {
        Rat term = c;
        for (int v = 0; v < arity_; ++v) {
            for (int e = 0; e < k[static_cast<size_t>(v)]; ++e)
                term *= point[static_cast<size_t>(v)];
        }
        total += term;
    }
    return total;
}

Rat RatPoly::eval_int(const std::vector<Int>& point) const
{
    std::vector<Rat> rpoint(point.begin(), point.end());
    return eval(rpoint);
}

RatPoly& RatPoly::operator+=(const RatPoly& o)
{
    if (o.arity_ != arity_)
        throw std::invalid_argument("polynomial arity mismatch");
    for (const auto& [k, c] : o.terms_)
        add_term(k, c);
    return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o)
{
    if (o.arity_ != arity_)
        throw std::invalid_argument("polynomial arity mismatch");
    for (const auto& [k, c] : o.terms_)
        add_term(k, -c);
    return *this;
}

RatPoly& RatPoly::operator*=(const RatPoly& o)
{
    if (o.arity_ != arity_)
        throw std::invalid_argument("polynomial arity mismatch");
    RatPoly result(arity_);
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : o.terms_) {
            Key k(static_cast<size_t>(arity_));
            for (size_t i = 0; i < k.size(); ++i)
                k[i] = ka[i] + kb[i];
            result.add_term(k, ca * cb);
        }
    }
    *this = std::move(result);
    return *this;
}

RatPoly& RatPoly::operator*=(const Rat& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_)
        v *= c;
    return *this;
}

std::string RatPoly::str(const std::vector<std::string>& vars) const
{
    if (static_cast<int>(vars.size()) != arity_)
        throw std::invalid_argument("variable name list arity mismatch");
    if (terms_.empty())
        return "0";
    // Highest total degree first, then reverse-lex on the keys.
    std::vector<const std::pair<const Key, Rat>*> order;
    for (const auto& t : terms_)
        order.push_back(&t);
    std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
        int da = key_degree(a->first), db = key_degree(b->first);
        if (da != db)
            return da > db;
        return a->first > b->first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto* t : order) {
        const auto& [k, c] = *t;
        Rat abs_c = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0)
                os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool has_vars = key_degree(k) > 0;
        if (abs_c != 1 || !has_vars) {
            os << rat_num(abs_c).str();
            if (!rat_is_integer(abs_c))
                os << "/" << rat_den(abs_c).str();
            if (has_vars)
                os << "*";
        }
        bool first_var = true;
        for (int v = 0; v < arity_; ++v) {
            int e = k[static_cast<size_t>(v)];
            if (e == 0)
                continue;
            if (!first_var)
                os << "*";
            first_var = false;
            os << vars[static_cast<size_t>(v)];
            if (e > 1)
                os << "^" << e;
        }
    }
    return os.str();
}

std::string RatPoly::to_json() const
{
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (const auto& [k, c] : terms_) {
        std::ostringstream key;
        for (size_t i = 0; i < k.size(); ++i) {
            if (i)
                key << ",";
            key << k[i];
        }
        obj[key.str()] = rat_str(c);
    }
    return obj.dump();
}

RatPoly RatPoly::from_json(const std::string& json, int arity)
{
    auto obj = nlohmann::json::parse(json);
    if (!obj.is_object())
        throw std::invalid_argument("polynomial JSON must be an object");
    RatPoly p(arity);
    for (const auto& [key, value] : obj.items()) {
        Key k;
        std::istringstream is(key);
        std::string part;
        while (std::getline(is, part, ','))
            k.push_back(std::stoi(part));
        p.add_term(k, rat_from_str(value.get<std::string>()));
    }
    return p;
}

Rat coeff_of(const RatPoly& p, int k)
{
    if (p.arity() != 1)
        throw std::invalid_argument("expected a univariate polynomial");
    return p.coeff({k});
}

Rat coeff_of(const RatPoly& p, int a, int b)
{
    if (p.arity() != 2)
        throw std::invalid_argument("expected a bivariate polynomial");
    return p.coeff({a, b});
}

}  // namespace brim
