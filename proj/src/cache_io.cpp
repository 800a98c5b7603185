#include <markoff/cache_io.hpp>
#include <markoff/certify.hpp>

#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace markoff {

namespace {

using json = nlohmann::json;

json entries_json(const ReductionCache& cache) {
  json entries = json::array();
  for (const auto& [key, poly] : cache.snapshot()) {
    json xs = json::array();
    for (int i = 0; i <= poly.degree(); ++i) {
      json ks = json::array();
      const ZPoly& c = poly.coeff(i);
      for (int j = 0; j <= c.degree(); ++j) ks.push_back(c.coeff(j).get_str());
      xs.push_back(std::move(ks));
    }
    entries.push_back(json::array({std::to_string(key.first), std::to_string(key.second), std::move(xs)}));
  }
  return entries;
}

int small_int(const json& j) {
  const std::string s = j.get<std::string>();
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size() || v < 0) throw DomainError("cache: bad index " + s);
  return v;
}

}  // namespace

std::string cache_text(const ReductionCache& cache) {
  json doc;
  doc["version"] = std::to_string(ReductionCache::kVersion);
  doc["entries"] = entries_json(cache);
  doc["checksum"] = sha256_hex(doc["entries"].dump());
  return doc.dump();
}

CacheLoad load_cache_text(ReductionCache& cache, const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("cache: not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("version").get<std::string>() != std::to_string(ReductionCache::kVersion))
      return CacheLoad::VersionMismatch;
    const json& entries = doc.at("entries");
    if (sha256_hex(entries.dump()) != doc.at("checksum").get<std::string>())
      throw DomainError("cache: checksum mismatch");
    for (const auto& e : entries) {
      std::vector<ZPoly> xs;
      for (const auto& ks : e.at(2)) {
        std::vector<Integer> cs;
        for (const auto& c : ks) cs.emplace_back(c.get<std::string>());
        xs.emplace_back(std::move(cs));
      }
      cache.insert(small_int(e.at(0)), small_int(e.at(1)), UPoly<ZPoly>(std::move(xs)));
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("cache: malformed file: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw DomainError("cache: malformed integer");
  }
  return CacheLoad::Loaded;
}

CacheLoad load_cache(ReductionCache& cache, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return CacheLoad::Missing;
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_cache_text(cache, ss.str());
}

void save_cache(const ReductionCache& cache, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cache: cannot write " + tmp);
    out << cache_text(cache) << '\n';
    if (!out) throw ResourceError("cache: write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw ResourceError("cache: cannot replace " + path);
}

std::string default_cache_path() {
  if (const char* env = std::getenv("MARKOFF_CACHE"); env && *env) return env;
  return "markoff_cache.json";
}

}  // namespace markoff
