#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <doctest.h>

#include "veeswarm/geometry.hpp"

namespace testing {

inline constexpr double kExample = 1e-6;

inline void check_vec(veeswarm::Vec2 got, veeswarm::Vec2 want, double tol = kExample) {
    CHECK(std::abs(got.x - want.x) <= tol);
    CHECK(std::abs(got.y - want.y) <= tol);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    veeswarm::Vec2 point(double half_width) { return {uniform(-half_width, half_width), uniform(-half_width, half_width)}; }

private:
    std::mt19937_64 engine_;
};

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device entropy;
        const auto suffix = (std::uint64_t{entropy()} << 32) ^ entropy();
        path_ = std::filesystem::temp_directory_path() / ("veeswarm_" + tag + "_" + std::to_string(suffix));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::filesystem::path scenario_dir() { return VEESWARM_SCENARIO_DIR; }

}  // namespace testing
