#include "expdyn/address.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace expdyn {

namespace {

// Shortest word v' with v = v'^m.
std::vector<long> primitive_root(const std::vector<long>& v) {
    const size_t n = v.size();
    for (size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (size_t i = d; i < n && ok; ++i) ok = v[i] == v[i % d];
        if (ok) return {v.begin(), v.begin() + static_cast<long>(d)};
    }
    return v;
}

}  // namespace

Address::Address(std::vector<long> preperiod, std::vector<long> period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
    if (per_.empty())
        throw Error(Errc::InvalidArgument, "address: period word must be nonempty");
    per_ = primitive_root(per_);
    // Absorb the preperiod tail into the cycle: u.a (v''.a)^inf == u (a.v'')^inf.
    while (!pre_.empty() && pre_.back() == per_.back()) {
        pre_.pop_back();
        std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
    }
}

long Address::max_entry() const {
    long m = 0;
    for (long s : pre_) m = std::max(m, std::labs(s));
    for (long s : per_) m = std::max(m, std::labs(s));
    return m;
}

Address Address::shifted() const {
    if (!pre_.empty())
        return Address(std::vector<long>(pre_.begin() + 1, pre_.end()), per_);
    std::vector<long> rot(per_.begin() + 1, per_.end());
    rot.push_back(per_.front());
    return Address({}, rot);
}

std::string Address::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < pre_.size(); ++i) {
        if (i) os << ',';
        os << pre_[i];
    }
    os << '|';
    for (size_t i = 0; i < per_.size(); ++i) {
        if (i) os << ',';
        os << per_[i];
    }
    return os.str();
}

Address Address::parse(const std::string& text) {
    const auto bar = text.find('|');
    if (bar == std::string::npos)
        throw Error(Errc::InvalidArgument,
                    "address: expected \"<preperiod>|<period>\", got \"" + text + "\"");
    auto parse_word = [](const std::string& part) {
        std::vector<long> word;
        std::string tok;
        std::istringstream is(part);
        while (std::getline(is, tok, ',')) {
            if (tok.empty()) continue;
            size_t pos = 0;
            long v = 0;
            try {
                v = std::stol(tok, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != tok.size())
                throw Error(Errc::InvalidArgument, "address: bad symbol \"" + tok + "\"");
            word.push_back(v);
        }
        return word;
    };
    return Address(parse_word(text.substr(0, bar)), parse_word(text.substr(bar + 1)));
}

}  // namespace expdyn
