#include "mattekit/core/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mattekit {

using nlohmann::json;

const char* to_string(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
  }
  return "train";
}

std::optional<Split> split_from_string(const std::string& token) {
  if (token == "train") return Split::Train;
  if (token == "val") return Split::Val;
  if (token == "test") return Split::Test;
  return std::nullopt;
}

namespace {

std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

ManifestRecord record_from_json(const json& j, int line_no) {
  const std::string where = "manifest line " + std::to_string(line_no);
  if (!j.is_object()) throw Error(ErrorCode::ParseError, where + ": expected an object");

  ManifestRecord rec;
  auto fetch = [&](const char* key, bool required) -> std::string {
    auto it = j.find(key);
    if (it == j.end()) {
      if (required) throw Error(ErrorCode::ParseError, where + ": missing field '" + key + "'");
      return {};
    }
    if (!it->is_string()) {
      throw Error(ErrorCode::ParseError, where + ": field '" + key + "' must be a string");
    }
    return it->get<std::string>();
  };

  rec.foreground = fetch("foreground", true);
  rec.alpha = fetch("alpha", true);
  rec.background = fetch("background", false);
  if (rec.foreground.empty() || rec.alpha.empty()) {
    throw Error(ErrorCode::ParseError, where + ": paths must be non-empty");
  }

  const std::string split_token = fetch("split", true);
  auto split = split_from_string(split_token);
  if (!split) {
    throw Error(ErrorCode::ParseError,
                where + ": split must be train|val|test, got '" + split_token + "'");
  }
  rec.split = *split;

  rec.id = fetch("id", false);
  if (rec.id.empty()) rec.id = stem_of(rec.alpha);
  if (rec.id.empty()) throw Error(ErrorCode::ParseError, where + ": empty record id");
  return rec;
}

}  // namespace

CorpusManifest CorpusManifest::parse(const std::string& text) {
  CorpusManifest manifest;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::set<std::string> seen_ids;
  while (std::getline(in, line)) {
    ++line_no;
    // allow blank lines and comments between records
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError,
                  "manifest line " + std::to_string(line_no) + ": " + e.what());
    }
    ManifestRecord rec = record_from_json(j, line_no);
    if (!seen_ids.insert(rec.id).second) {
      throw Error(ErrorCode::ParseError,
                  "manifest line " + std::to_string(line_no) + ": duplicate id '" + rec.id + "'");
    }
    manifest.records.push_back(std::move(rec));
  }
  return manifest;
}

CorpusManifest CorpusManifest::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open manifest " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  CorpusManifest manifest = parse(buf.str());

  // Relative record paths resolve against the manifest's own directory, so a
  // corpus can be checked out anywhere and still load.
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  if (!base.empty()) {
    auto rebase = [&base](std::string& p) {
      if (!p.empty() && std::filesystem::path(p).is_relative()) {
        p = (base / p).string();
      }
    };
    for (ManifestRecord& rec : manifest.records) {
      rebase(rec.foreground);
      rebase(rec.alpha);
      rebase(rec.background);
    }
  }
  return manifest;
}

std::string CorpusManifest::serialize() const {
  std::ostringstream out;
  for (const auto& rec : records) {
    json j;
    j["alpha"] = rec.alpha;
    if (!rec.background.empty()) j["background"] = rec.background;
    j["foreground"] = rec.foreground;
    j["id"] = rec.id;
    j["split"] = to_string(rec.split);
    out << j.dump() << "\n";
  }
  return out.str();
}

void CorpusManifest::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write manifest " + path);
  out << serialize();
  if (!out.good()) throw Error(ErrorCode::IoError, "short write on " + path);
}

}  // namespace mattekit
