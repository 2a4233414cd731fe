// SPDX-License-Identifier: Apache-2.0
//
// cogbeam: robust transceiver beamforming for MIMO cognitive radio links
// Copyright (C) 2026 the cogbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Flat key = value configuration files for the CLI. Power-like keys carry
// a _db suffix and are converted to linear scale here, at the boundary;
// everything past this point works in linear units.

#ifndef COGBEAM_CONFIG_HPP
#define COGBEAM_CONFIG_HPP

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cogbeam/channel.hpp"

namespace cogbeam {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

struct ConfigOverrides {
    SystemConfig cfg;
    UncertaintyModel uncertainty;
    std::optional<double> i_prime; // linear; only the underlay sweep uses it
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace detail

/// Parse a config file on top of base settings. Recognized keys:
/// nt, nr, p_su_db, p_pu_db, i_limit_db, noise_db, n_sec, e, sigma,
/// sigma_prime, i_prime_db. Lines that are blank or start with '#' are
/// skipped; unknown keys are rejected.
inline ConfigOverrides parse_config_file(const std::string& path, const SystemConfig& base_cfg,
                                         const UncertaintyModel& base_u) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);

    ConfigOverrides out{base_cfg, base_u, std::nullopt};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = detail::trim(line);
        if (stripped.empty() || stripped[0] == '#')
            continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected key = value");
        const std::string key = detail::trim(stripped.substr(0, eq));
        const std::string value_str = detail::trim(stripped.substr(eq + 1));
        double value = 0;
        try {
            std::size_t consumed = 0;
            value = std::stod(value_str, &consumed);
            if (consumed != value_str.size())
                throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": cannot parse value '" + value_str + "'");
        }

        if (key == "nt")
            out.cfg.nt = static_cast<std::size_t>(value);
        else if (key == "nr")
            out.cfg.nr = static_cast<std::size_t>(value);
        else if (key == "p_su_db")
            out.cfg.p_su = db_to_linear(value);
        else if (key == "p_pu_db")
            out.cfg.p_pu = db_to_linear(value);
        else if (key == "i_limit_db")
            out.cfg.i_limit = db_to_linear(value);
        else if (key == "noise_db")
            out.cfg.noise_power = db_to_linear(value);
        else if (key == "n_sec")
            out.cfg.n_sec = static_cast<std::size_t>(value);
        else if (key == "e")
            out.uncertainty.e = value;
        else if (key == "sigma")
            out.uncertainty.sigma = value;
        else if (key == "sigma_prime")
            out.uncertainty.sigma_prime = value;
        else if (key == "i_prime_db")
            out.i_prime = db_to_linear(value);
        else
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": unknown key '" +
                                     key + "'");
    }
    out.cfg.validate();
    out.uncertainty.validate();
    return out;
}

} // namespace cogbeam

#endif // COGBEAM_CONFIG_HPP
