#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"

namespace edm_emu {

/// Sampled spin expectations and internal-level populations.
///
/// `norms` and `fock_populations` are filled only by the ion-level simulator;
/// the 4x4 Dirac propagation leaves them empty.
struct SpinTimeSeries {
    std::vector<double> times;
    std::vector<std::array<double, 3>> spin;        // <S_x>, <S_y>, <S_z>
    std::vector<std::array<double, 4>> populations; // levels a, b, c, d
    std::vector<double> norms;
    std::vector<std::vector<double>> fock_populations;

    [[nodiscard]] std::size_t size() const { return times.size(); }

    /// Channel names: S_x, S_y, S_z, P_a, P_b, P_c, P_d.
    [[nodiscard]] std::vector<double> channel(const std::string& name) const
    {
        std::vector<double> out;
        out.reserve(times.size());
        const auto pick = [&](auto&& get) {
            for (std::size_t i = 0; i < times.size(); ++i) {
                out.push_back(get(i));
            }
        };
        if (name == "S_x" || name == "S_y" || name == "S_z") {
            const int axis = name[2] - 'x';
            pick([&](std::size_t i) { return spin[i][axis]; });
        } else if (name.size() == 3 && name[0] == 'P' && name[1] == '_' && name[2] >= 'a' && name[2] <= 'd') {
            const int level = name[2] - 'a';
            pick([&](std::size_t i) { return populations[i][level]; });
        } else {
            throw ValidationError("unknown channel '" + name + "' (expected S_x, S_y, S_z, P_a..P_d)");
        }
        return out;
    }
};

inline void validate_time_grid(const std::vector<double>& times)
{
    if (times.empty()) {
        throw ValidationError("time grid is empty");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i])) {
            throw ValidationError("time grid contains a non-finite value");
        }
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw ValidationError("time grid must be strictly increasing");
        }
    }
}

inline std::vector<double> linear_grid(double start, double stop, std::size_t count)
{
    if (count == 0) {
        throw ValidationError("grid count must be >= 1");
    }
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = start;
        return out;
    }
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = start + step * static_cast<double>(i);
    }
    out.back() = stop;
    return out;
}

} // namespace edm_emu
