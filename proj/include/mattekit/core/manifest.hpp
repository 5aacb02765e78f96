#ifndef MATTEKIT_CORE_MANIFEST_HPP_
#define MATTEKIT_CORE_MANIFEST_HPP_

#include <optional>
#include <string>
#include <vector>

#include "mattekit/core/errors.hpp"

namespace mattekit {

enum class Split { Train, Val, Test };

const char* to_string(Split split);
std::optional<Split> split_from_string(const std::string& token);

/// One corpus entry. `id` defaults to the stem of `alpha` when absent in the
/// file; ids must be unique within a manifest since they name output and
/// prediction files.
struct ManifestRecord {
  std::string id;
  std::string foreground;
  std::string alpha;
  std::string background;  // empty = none
  Split split = Split::Train;

  bool has_background() const { return !background.empty(); }
};

/// Line-delimited corpus index. One JSON object per line with fields
/// "foreground", "alpha", "split" and optional "background", "id".
struct CorpusManifest {
  std::vector<ManifestRecord> records;

  static CorpusManifest parse(const std::string& text);
  /// parse() on the file's contents; relative record paths are resolved
  /// against the manifest's directory.
  static CorpusManifest load(const std::string& path);

  std::string serialize() const;
  void save(const std::string& path) const;
};

}  // namespace mattekit

#endif  // MATTEKIT_CORE_MANIFEST_HPP_
