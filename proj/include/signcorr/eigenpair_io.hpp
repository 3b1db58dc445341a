#pragma once

// JSON cache of solved eigenpairs:
//
//   { "format": "signcorr-eigenpairs", "version": 1,
//     "potential": [c0, c1, ...], "domain_length": L, "grid_step": h,
//     "pairs": [ { "index": n, "parity": "even"|"odd", "lambda": ..., "w0": ...,
//                  "dw0": ..., "grid_step": h, "values": [...] }, ... ] }

#include <filesystem>
#include <string>

#include <json.hpp>

#include "signcorr/schrodinger.hpp"

namespace signcorr::schrodinger {

nlohmann::json to_json(const EigenpairSet& set);
/// Throws std::invalid_argument on a malformed document.
EigenpairSet eigenpairs_from_json(const nlohmann::json& doc);

/// Writes the cache file and returns the content hash of the bytes written.
std::string save_eigenpairs(const EigenpairSet& set, const std::filesystem::path& path);

struct LoadedEigenpairs {
    EigenpairSet set;
    std::string content_hash;
};

LoadedEigenpairs load_eigenpairs(const std::filesystem::path& path);

} // namespace signcorr::schrodinger
