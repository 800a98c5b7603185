#ifndef MARKOFF_CACHE_IO_HPP
#define MARKOFF_CACHE_IO_HPP

#include <markoff/reduce.hpp>

#include <string>

namespace markoff {

// Serialized reduction table: canonical JSON with a format version and a
// SHA-256 checksum over the entries.
std::string cache_text(const ReductionCache& cache);

enum class CacheLoad { Loaded, Missing, VersionMismatch };

// Throws DomainError on a malformed file or a checksum mismatch. A file
// written by another format version is left alone and reported.
CacheLoad load_cache(ReductionCache& cache, const std::string& path);
CacheLoad load_cache_text(ReductionCache& cache, const std::string& text);
void save_cache(const ReductionCache& cache, const std::string& path);

// $MARKOFF_CACHE, falling back to markoff_cache.json in the working directory.
std::string default_cache_path();

}  // namespace markoff

#endif
