#pragma once

#include <string>
#include <vector>

#include "expdyn/types.hpp"

namespace expdyn {

/// An eventually periodic symbol sequence: preperiod word followed by a
/// cyclically repeated period word. Stored in normal form: the period is
/// primitive (not a proper power) and the preperiod is minimal (the tail
/// rotation that shortens it has been applied).
class Address {
public:
    Address(std::vector<long> preperiod, std::vector<long> period);

    const std::vector<long>& preperiod() const noexcept { return pre_; }
    const std::vector<long>& period() const noexcept { return per_; }

    long symbol(size_t j) const {
        if (j < pre_.size()) return pre_[j];
        return per_[(j - pre_.size()) % per_.size()];
    }

    bool purely_periodic() const noexcept { return pre_.empty(); }

    /// Largest |symbol| over preperiod and period.
    long max_entry() const;

    /// Drops the first symbol (one application of the shift map).
    Address shifted() const;

    bool operator==(const Address& o) const noexcept {
        return pre_ == o.pre_ && per_ == o.per_;
    }

    /// "pre0,pre1|per0,per1" with an empty side allowed, e.g. "|0" for 0bar.
    std::string str() const;
    static Address parse(const std::string& text);

private:
    std::vector<long> pre_;
    std::vector<long> per_;
};

}  // namespace expdyn
