#pragma once

// StateField files: a JSON header carrying the GridSpec plus a payload of
// (re, im) pairs in axis-0-fastest order, either raw little-endian doubles
// or CSV rows "index,re,im".

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

#include "ueq/grid.hpp"

namespace ueq::io {

enum class Encoding { binary, csv };

nlohmann::json grid_to_json(const grid::GridSpec& g);
grid::GridSpec grid_from_json(const nlohmann::json& j);

/// Writes <stem>.json and <stem>.bin (binary) or <stem>.csv.
void export_field(const grid::StateField& f, const std::filesystem::path& stem, Encoding enc = Encoding::binary);

/// Reads a field back from its JSON header path; the payload path is taken from the header.
grid::StateField import_field(const std::filesystem::path& header);

}  // namespace ueq::io
