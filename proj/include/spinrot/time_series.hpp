#pragma once

#include <deque>
#include <string>
#include <vector>

namespace spinrot {

struct TimeSeries {
    std::vector<double> t;
    std::vector<std::string> names;
    std::deque<std::vector<double>> channels;

    std::vector<double>& add_channel(std::string name);
    const std::vector<double>& channel(const std::string& name) const;
    bool has_channel(const std::string& name) const;
    void validate() const;  // strictly increasing t, equal lengths
};

std::vector<double> linspace(double lo, double hi, int n);

}  // namespace spinrot
