#include "spinrot/time_series.hpp"

#include <algorithm>

#include "spinrot/core.hpp"

namespace spinrot {

std::vector<double>& TimeSeries::add_channel(std::string name) {
    if (has_channel(name)) throw ValidationError("duplicate channel '" + name + "'");
    names.push_back(std::move(name));
    channels.emplace_back();
    channels.back().reserve(t.size());
    return channels.back();
}

const std::vector<double>& TimeSeries::channel(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ValidationError("no channel named '" + name + "'");
    return channels[static_cast<std::size_t>(it - names.begin())];
}

bool TimeSeries::has_channel(const std::string& name) const {
    return std::find(names.begin(), names.end(), name) != names.end();
}

void TimeSeries::validate() const {
    for (std::size_t k = 1; k < t.size(); ++k)
        if (!(t[k] > t[k - 1])) throw NumericalContractError("time grid is not strictly increasing");
    for (std::size_t c = 0; c < channels.size(); ++c)
        if (channels[c].size() != t.size())
            throw NumericalContractError("channel '" + names[c] + "' length differs from the time grid");
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw ValidationError("grid needs at least one point");
    std::vector<double> out(static_cast<std::size_t>(n));
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    const double step = (hi - lo) / (n - 1);
    for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = lo + k * step;
    out.back() = hi;
    return out;
}

}  // namespace spinrot
