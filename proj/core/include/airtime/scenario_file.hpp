#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "airtime/scenario.hpp"

namespace airtime {

/// Scenario files are INI-style:
///
///   # comment
///   [sim]
///   scheduler = tbr            # dcf | tbr
///   duration_us = 20000000
///   seed = 7
///   cw_min_slots = 31          # any TimingConstants / TbrConfig field
///
///   [node n1]
///   rate_mbps = 1
///   packet_bytes = 1500
///   loss_rate = 0
///   direction = uplink         # uplink | downlink
///   source = saturating        # rate_limited:<mbps> | task:<bytes> | window:<packets>
///
/// Keys are case-sensitive. Throws ParseError with the offending line and key;
/// the result is not validated (see Scenario::validate).
Scenario parse_scenario(std::istream& in, const std::string& origin);
Scenario load_scenario(const std::filesystem::path& path);

std::string to_ini(const Scenario& scenario);

}  // namespace airtime
