#pragma once

#include "torgamma/pairing.hpp"

#include <json.hpp>

#include <string>

namespace torgamma {

using Json = nlohmann::ordered_json;

// fan files:
//   {"rank": r, "points": [[..], ..], "max_simplices": [[1-based], ..],
//    "weights": ["p/q" | int, ..]}        (weights optional)
FanData parse_fan(const Json& j);
FanData load_fan(const std::string& path);

// candidate pairing files:
//   [{"c": [..], "d": [..], "poly": [{"coeff": "p/q" | int,
//     "monomial": [e_1 .. e_n]}, ..]}, ..]
std::vector<PairingEntry> parse_pairing(const Json& j, int rank, int npoints);
std::vector<PairingEntry> load_pairing(const std::string& path, int rank, int npoints);

Json complex_json(const Cx& z);

Json sectors_report(const SectorSet& ss);
Json pairing_matrix_report(const PairingMatrix& pm);
Json gamma_report(const SectorSet& ss, const GammaValue& v);
Json gkz_report(const GkzReport& rep);
Json one_report(const OneReport& rep);
Json volume_report(const VolumeReport& rep);
Json pairing_eval_report(const PairingReport& rep);
Json inverse_euler_report(const InverseEulerReport& rep);

}  // namespace torgamma
