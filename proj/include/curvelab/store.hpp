#ifndef CURVELAB_STORE_HPP
#define CURVELAB_STORE_HPP

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "curvelab/automorphism.hpp"
#include "curvelab/curve_sample.hpp"
#include "curvelab/error.hpp"
#include "curvelab/surface.hpp"

namespace curvelab {

// Bumped whenever enumeration or intersection output could change.
inline constexpr const char* kAlgorithmVersion = "curvelab-sample/3";

inline constexpr const char* kCacheDirEnv = "CURVELAB_CACHE_DIR";

class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
        if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) throw Error("sha256 init failed");
    }
    Sha256& update(const void* data, std::size_t n) {
        if (EVP_DigestUpdate(ctx_.get(), data, n) != 1) throw Error("sha256 update failed");
        return *this;
    }
    Sha256& update(const std::string& s) { return update(s.data(), s.size()); }
    std::string hex() {
        unsigned char md[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        if (EVP_DigestFinal_ex(ctx_.get(), md, &len) != 1) throw Error("sha256 final failed");
        static const char* digits = "0123456789abcdef";
        std::string out;
        for (unsigned int i = 0; i < len; ++i) {
            out += digits[md[i] >> 4];
            out += digits[md[i] & 15];
        }
        return out;
    }

private:
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

inline std::string sha256_hex(const std::string& s) { return Sha256().update(s).hex(); }

struct RunConfig {
    int genus = 0;
    int punctures = 7;
    std::string seeds_file;       // empty: round curves (genus 0 only)
    std::string generators_file;  // empty: braid generators (genus 0 only)
    int depth = 8;
    std::size_t maxlen = 12;
    int radius = 4;
    std::string ef = "both";
    std::string cache_dir;        // empty: default_cache_dir()
    unsigned threads = 1;

    void validate() const {
        if (depth < 0) throw InvalidInput("depth must be >= 0");
        if (maxlen < 1) throw InvalidInput("maxlen must be >= 1");
        if (radius < 0) throw InvalidInput("radius must be >= 0");
        if (threads < 1) throw InvalidInput("threads must be >= 1");
        if (ef != "true" && ef != "false" && ef != "both") throw InvalidInput("ef must be true, false or both");
        if (genus < 0 || punctures < 1) throw InvalidInput("surface needs genus >= 0 and at least one puncture");
    }
};

inline std::filesystem::path default_cache_dir() {
    if (const char* dir = std::getenv(kCacheDirEnv); dir && *dir) return dir;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "curvelab";
    if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "curvelab";
    return ".curvelab-cache";
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidInput("cannot open " + path);
    try {
        return nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

// Seeds file: {"surface": [g, n], "seeds": ["x1 x2", ...]}
inline std::vector<CurveClass> seeds_from_json(const SurfaceModel& m, const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("seeds")) throw InvalidInput("seeds file needs \"seeds\"");
    if (j.contains("surface")) {
        const auto& s = j.at("surface");
        if (!s.is_array() || s.size() != 2 || s[0].get<int>() != m.genus() || s[1].get<int>() != m.punctures())
            throw InvalidInput("seeds file is for a different surface than " + m.name());
    }
    std::vector<CurveClass> out;
    for (const auto& w : j.at("seeds")) out.push_back(canonical_class(m, m.parse(w.get<std::string>())));
    return out;
}

inline std::vector<CurveClass> load_seeds(const SurfaceModel& m, const RunConfig& c) {
    if (!c.seeds_file.empty()) return seeds_from_json(m, read_json_file(c.seeds_file));
    if (m.genus() != 0) throw InvalidInput(m.name() + " has no default seeds; pass a seeds file");
    return round_curves(m);
}

inline std::vector<FreeAutomorphism> load_generators(const SurfaceModel& m, const RunConfig& c) {
    if (!c.generators_file.empty()) return automorphisms_from_json(m, read_json_file(c.generators_file));
    if (m.genus() != 0) throw InvalidInput(m.name() + " has no default generators; pass a generator file");
    return braid_generators(m);
}

// Key over everything that determines a sample.
inline std::string sample_cache_key(const SurfaceModel& m, const std::vector<CurveClass>& seeds,
                                    const std::vector<FreeAutomorphism>& gens, int depth, std::size_t maxlen) {
    std::vector<std::string> seed_words;
    for (const auto& s : seeds) seed_words.push_back(m.format(s.word()));
    std::sort(seed_words.begin(), seed_words.end());
    const nlohmann::json key{{"model", {m.genus(), m.punctures()}},
                             {"seeds", seed_words},
                             {"generators", to_json(m, gens).at("generators")},
                             {"depth", depth},
                             {"maxlen", maxlen},
                             {"version", kAlgorithmVersion}};
    return sha256_hex(key.dump());
}

// Hash of the sample's content, independent of file layout.
inline std::string sample_content_hash(const CurveGraphSample& s) {
    Sha256 h;
    h.update("model " + std::to_string(s.model().genus()) + " " + std::to_string(s.model().punctures()) + "\n");
    for (const auto& c : s.classes()) h.update(s.model().format(c.word()) + "\n");
    const auto& packed = s.matrix().packed();
    std::vector<unsigned char> buf;
    buf.reserve(1 << 16);
    for (std::size_t i = 0; i < packed.size(); ++i) {
        buf.push_back(static_cast<unsigned char>(packed[i] & 0xff));
        buf.push_back(static_cast<unsigned char>(packed[i] >> 8));
        if (buf.size() >= (1 << 16)) {
            h.update(buf.data(), buf.size());
            buf.clear();
        }
    }
    h.update(buf.data(), buf.size());
    return h.hex();
}

class SampleStore {
public:
    explicit SampleStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path path_for(const std::string& key) const { return dir_ / ("sample-" + key + ".json"); }

    // nullopt when absent; CacheCorruption when present but inconsistent.
    std::optional<CurveGraphSample> load(const std::string& key) const {
        const auto p = path_for(key);
        if (!std::filesystem::exists(p)) return std::nullopt;
        std::ifstream f(p);
        if (!f) throw CacheCorruption("cannot read cache file " + p.string());
        SampleFile file = [&] {
            try {
                return read_sample_file(f);
            } catch (const InvalidInput& e) {
                throw CacheCorruption(p.string() + ": " + e.what());
            }
        }();
        if (!file.extra.contains("content_hash") || !file.extra.at("content_hash").is_string())
            throw CacheCorruption(p.string() + ": no content hash");
        if (file.extra.value("key", std::string()) != key) throw CacheCorruption(p.string() + ": key mismatch");
        const std::string stored = file.extra.at("content_hash").get<std::string>();
        const std::string actual = sample_content_hash(file.sample);
        if (stored != actual) throw CacheCorruption(p.string() + ": content hash " + actual + " != stored " + stored);
        return std::move(file.sample);
    }

    // Written to a temporary file and renamed, one writer per key.
    void save(const std::string& key, const CurveGraphSample& s) const {
        std::lock_guard<std::mutex> lock(key_mutex(key));
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) throw Error("cannot create cache directory " + dir_.string() + ": " + ec.message());
        const auto final_path = path_for(key);
        auto tmp = final_path;
        tmp += ".tmp";
        {
            std::ofstream f(tmp, std::ios::trunc);
            if (!f) throw Error("cache directory not writable: " + dir_.string());
            write_sample(f, s, {{"key", key}, {"content_hash", sample_content_hash(s)}, {"version", kAlgorithmVersion}});
        }
        std::filesystem::rename(tmp, final_path, ec);
        if (ec) throw Error("cannot move cache file into place: " + ec.message());
    }

private:
    static std::mutex& key_mutex(const std::string& key) {
        static std::mutex guard;
        static std::map<std::string, std::unique_ptr<std::mutex>> locks;
        std::lock_guard<std::mutex> g(guard);
        auto& m = locks[key];
        if (!m) m = std::make_unique<std::mutex>();
        return *m;
    }

    std::filesystem::path dir_;
};

struct CachedSample {
    CurveGraphSample sample;
    std::string key;
    bool from_cache = false;
};

// Sample for the configuration, from the cache when present.
inline CachedSample load_or_enumerate(const RunConfig& c, bool use_cache = true) {
    c.validate();
    const SurfaceModel m = surface_model(c.genus, c.punctures);
    const auto seeds = load_seeds(m, c);
    const auto gens = load_generators(m, c);
    const std::string key = sample_cache_key(m, seeds, gens, c.depth, c.maxlen);
    const SampleStore store(c.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(c.cache_dir));
    if (use_cache)
        if (auto s = store.load(key)) return {std::move(*s), key, true};
    EnumerationOptions o;
    o.depth = c.depth;
    o.maxlen = c.maxlen;
    o.threads = c.threads;
    auto r = enumerate_curves_detail(m, seeds, gens, o);
    if (!r.faults.empty()) throw Error("enumeration fault: " + r.faults.front());
    if (use_cache) store.save(key, r.sample);
    return {std::move(r.sample), key, false};
}

} // namespace curvelab

#endif // CURVELAB_STORE_HPP
