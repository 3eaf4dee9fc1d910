#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "cli.hpp"
#include "curvelab/store.hpp"

using namespace curvelab;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("curvelab-test-" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

RunConfig small_config(const fs::path& dir) {
    RunConfig c;
    c.punctures = 5;
    c.depth = 3;
    c.maxlen = 10;
    c.cache_dir = dir.string();
    return c;
}

} // namespace

TEST(Hash, KnownVector) {
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Config, Validation) {
    RunConfig c;
    EXPECT_NO_THROW(c.validate());
    c.ef = "maybe";
    EXPECT_THROW(c.validate(), InvalidInput);
    c = RunConfig{};
    c.depth = -1;
    EXPECT_THROW(c.validate(), InvalidInput);
}

TEST(Store, RoundTripThroughCache) {
    TempDir dir;
    const auto cfg = small_config(dir.path());
    const auto first = load_or_enumerate(cfg);
    EXPECT_FALSE(first.from_cache);
    EXPECT_TRUE(fs::exists(SampleStore(dir.path()).path_for(first.key)));
    const auto second = load_or_enumerate(cfg);
    EXPECT_TRUE(second.from_cache);
    EXPECT_EQ(second.key, first.key);
    EXPECT_EQ(second.sample.classes(), first.sample.classes());
    EXPECT_EQ(second.sample.matrix().packed(), first.sample.matrix().packed());
    EXPECT_EQ(sample_content_hash(second.sample), sample_content_hash(first.sample));
}

TEST(Store, KeyDependsOnConfiguration) {
    TempDir dir;
    auto cfg = small_config(dir.path());
    const auto a = load_or_enumerate(cfg, false);
    cfg.depth = 2;
    const auto b = load_or_enumerate(cfg, false);
    cfg.depth = 3;
    cfg.maxlen = 9;
    const auto c = load_or_enumerate(cfg, false);
    EXPECT_NE(a.key, b.key);
    EXPECT_NE(a.key, c.key);
    cfg.maxlen = 10;
    EXPECT_EQ(load_or_enumerate(cfg, false).key, a.key);
}

TEST(Store, TamperedFileIsDetected) {
    TempDir dir;
    const auto cfg = small_config(dir.path());
    const auto s = load_or_enumerate(cfg);
    const auto path = SampleStore(dir.path()).path_for(s.key);
    std::string text;
    {
        std::ifstream f(path);
        text.assign(std::istreambuf_iterator<char>(f), {});
    }
    // change one intersection number in the last row
    const auto pos = text.rfind('[');
    ASSERT_NE(pos, std::string::npos);
    ASSERT_TRUE(std::isdigit(static_cast<unsigned char>(text[pos + 1])));
    text[pos + 1] = text[pos + 1] == '1' ? '2' : '1';
    {
        std::ofstream f(path, std::ios::trunc);
        f << text;
    }
    EXPECT_THROW(load_or_enumerate(cfg), CacheCorruption);
}

TEST(Store, TruncatedFileIsDetected) {
    TempDir dir;
    const auto cfg = small_config(dir.path());
    const auto s = load_or_enumerate(cfg);
    const auto path = SampleStore(dir.path()).path_for(s.key);
    fs::resize_file(path, fs::file_size(path) / 2);
    EXPECT_THROW(load_or_enumerate(cfg), CacheCorruption);
}

TEST(Store, GenusOneNeedsFiles) {
    TempDir dir;
    RunConfig cfg;
    cfg.genus = 1;
    cfg.punctures = 1;
    cfg.cache_dir = dir.path().string();
    EXPECT_THROW(load_or_enumerate(cfg, false), InvalidInput);
    cfg.seeds_file = std::string(CURVELAB_DATA_DIR) + "/seeds/s11.json";
    cfg.generators_file = std::string(CURVELAB_DATA_DIR) + "/generators/s11.json";
    cfg.depth = 3;
    const auto s = load_or_enumerate(cfg, false);
    EXPECT_GE(s.sample.size(), 2u);
    for (std::size_t i = 0; i < s.sample.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) EXPECT_GT(s.sample.at(i, j), 0);
}

TEST(Store, SeedsForAnotherSurfaceRejected) {
    TempDir dir;
    auto cfg = small_config(dir.path());
    cfg.seeds_file = std::string(CURVELAB_DATA_DIR) + "/seeds/s11.json";
    EXPECT_THROW(load_or_enumerate(cfg, false), InvalidInput);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli::run("graphs embed C4 gamma0").code, 0);
    EXPECT_EQ(cli::run("graphs embed K5 gamma0").code, 2);
    EXPECT_EQ(cli::run("graphs embed nosuchgraph gamma0").code, 1);
    EXPECT_EQ(cli::run("raag normalize gamma0 'a z'").code, 1);
    EXPECT_EQ(cli::run("no-such-command").code, 1);
}

TEST(Cli, Outputs) {
    const auto ball = cli::run("raag ball gamma0 --radius 1");
    EXPECT_EQ(ball.code, 0);
    EXPECT_NE(ball.out.find("15 elements"), std::string::npos) << ball.out;
    const auto nf = cli::run("raag normalize gamma0 'q a q^-1'");
    EXPECT_EQ(nf.out, "a\n");
    const auto hom = cli::run("raag check-hom " + cli::data("phi.json"));
    EXPECT_EQ(hom.code, 0);
    EXPECT_NE(hom.out.find("all 14 relators"), std::string::npos) << hom.out;
    const auto decomp = cli::run("decomp --xi 4");
    EXPECT_EQ(decomp.code, 0);
    EXPECT_NE(decomp.out.find("exactly cases (i)-(v)"), std::string::npos);
}

TEST(Cli, CurvesUseTheCache) {
    TempDir dir;
    const std::string args = "curves enumerate --surface 0,5 --depth 3 --maxlen 10 --cache-dir \"" + dir.path().string() + "\"";
    const auto a = cli::run(args, true);
    const auto b = cli::run(args, true);
    EXPECT_EQ(a.code, 0);
    EXPECT_NE(a.out.find("(enumerated,"), std::string::npos) << a.out;
    EXPECT_NE(b.out.find("(cache,"), std::string::npos) << b.out;
    const auto none = cli::run("curves find K3 --surface 0,5 --depth 3 --maxlen 10 --cache-dir \"" + dir.path().string() + "\"");
    EXPECT_EQ(none.code, 2);
}

TEST(Cli, CorruptCacheIsAnError) {
    TempDir dir;
    const std::string args = "curves enumerate --surface 0,5 --depth 2 --cache-dir \"" + dir.path().string() + "\"";
    ASSERT_EQ(cli::run(args).code, 0);
    for (const auto& e : fs::directory_iterator(dir.path())) fs::resize_file(e.path(), 10);
    EXPECT_EQ(cli::run(args).code, 1);
}
