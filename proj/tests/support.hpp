#ifndef CABINCO2_TESTS_SUPPORT_HPP
#define CABINCO2_TESTS_SUPPORT_HPP

#include <atomic>
#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <string>

#include "cabinco2/cabinco2.hpp"

namespace testing_support {

inline const std::string kData = CABINCO2_DATA_DIR;

inline const cabinco2::Dataset& shipped() {
    static const cabinco2::Dataset d = cabinco2::load_dataset(std::filesystem::path(kData));
    return d;
}

inline const cabinco2::Study& shipped_study() {
    static const cabinco2::Study s = cabinco2::run_study(shipped());
    return s;
}

inline const cabinco2::CompositeAircraft& composite(const std::string& aircraft) {
    for (const auto& c : shipped_study().composites) {
        if (c.aircraft == aircraft) return c;
    }
    throw std::runtime_error("no composite " + aircraft);
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("cabinco2_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const { return path_; }

    std::filesystem::path write(const std::string& name, const std::string& text) const {
        const auto p = path_ / name;
        std::filesystem::create_directories(p.parent_path());
        std::ofstream(p, std::ios::binary) << text;
        return p;
    }

    // Copy of the shipped data directory, so tests can corrupt single files.
    [[nodiscard]] std::filesystem::path copy_data() const {
        const auto dst = path_ / "data";
        std::filesystem::copy(kData, dst, std::filesystem::copy_options::recursive);
        return dst;
    }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testing_support

#endif  // CABINCO2_TESTS_SUPPORT_HPP
