#include "intermap/harness/cache.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "intermap/isrm.hpp"
#include "intermap/map_operator.hpp"

namespace intermap::harness {
namespace {

constexpr char kMagic[4] = {'I', 'Q', 'M', 'P'};
constexpr std::uint16_t kVersion = 1;

template <typename T>
void write_raw(std::ostream& out, const T& value) {
    // Payload is little-endian by specification; this writer targets
    // little-endian hosts and stores native bytes.
    out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <typename T>
void read_raw(std::istream& in, T& value) {
    in.read(reinterpret_cast<char*>(&value), sizeof value);
    if (!in) throw IoError("matrix cache: truncated file");
}

}  // namespace

void write_matrix_cache(const std::string& path, const MapSpec& spec,
                        const ComplexMatrix& matrix) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out.write(kMagic, sizeof kMagic);
    write_raw(out, kVersion);
    write_raw(out, static_cast<std::uint8_t>(spec.n_q));
    write_raw(out, static_cast<std::uint8_t>(spec.variant));
    const std::uint8_t alpha_flag = spec.alpha.is_rational() ? 0 : 1;
    write_raw(out, alpha_flag);
    if (spec.alpha.is_rational()) {
        write_raw(out, static_cast<std::uint64_t>(spec.alpha.numerator()));
        write_raw(out, static_cast<std::uint64_t>(spec.alpha.denominator()));
    } else {
        write_raw(out, spec.alpha.raw());
    }
    write_raw(out, spec.seed);
    const auto n = static_cast<std::size_t>(spec.dim());
    if (matrix.rows() != n || matrix.cols() != n) {
        throw ConfigError("matrix cache: matrix shape does not match spec");
    }
    out.write(reinterpret_cast<const char*>(matrix.data()),
              static_cast<std::streamsize>(n * n * sizeof(cdouble)));
    if (!out) throw IoError("matrix cache: short write to '" + path + "'");
}

CachedMatrix read_matrix_cache(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    char magic[4];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
        throw IoError("matrix cache: bad magic in '" + path + "'");
    }
    std::uint16_t version = 0;
    read_raw(in, version);
    if (version != kVersion) {
        throw IoError("matrix cache: unsupported format version " +
                      std::to_string(version));
    }
    std::uint8_t n_q = 0;
    std::uint8_t variant = 0;
    std::uint8_t alpha_flag = 0;
    read_raw(in, n_q);
    read_raw(in, variant);
    read_raw(in, alpha_flag);
    if (variant > 2) throw IoError("matrix cache: bad variant byte");

    CachedMatrix cached;
    cached.spec.n_q = n_q;
    cached.spec.variant = static_cast<Variant>(variant);
    if (alpha_flag == 0) {
        std::uint64_t a = 0;
        std::uint64_t b = 0;
        read_raw(in, a);
        read_raw(in, b);
        cached.spec.alpha = Alpha::rational(static_cast<std::int64_t>(a),
                                            static_cast<std::int64_t>(b));
    } else if (alpha_flag == 1) {
        double v = 0.0;
        read_raw(in, v);
        cached.spec.alpha = Alpha::real(v);
    } else {
        throw IoError("matrix cache: bad alpha flag");
    }
    read_raw(in, cached.spec.seed);
    const auto n = static_cast<std::size_t>(cached.spec.dim());
    cached.matrix = ComplexMatrix(n, n);
    in.read(reinterpret_cast<char*>(cached.matrix.data()),
            static_cast<std::streamsize>(n * n * sizeof(cdouble)));
    if (!in || in.gcount() !=
                   static_cast<std::streamsize>(n * n * sizeof(cdouble))) {
        throw IoError("matrix cache: truncated payload in '" + path + "'");
    }
    return cached;
}

ComplexMatrix load_matrix(const std::string& path) {
    return read_matrix_cache(path).matrix;
}

CacheResult cache_matrix(const MapSpec& spec, const std::string& dir) {
    std::filesystem::create_directories(dir);
    char name[64];
    std::snprintf(name, sizeof name, "intermap-%016llx.iqmp",
                  static_cast<unsigned long long>(spec.hash()));
    CacheResult result;
    result.path = (std::filesystem::path(dir) / name).string();
    if (std::filesystem::exists(result.path)) {
        result.hit = true;
        return result;
    }
    const TaggedUnitary u =
        spec.variant == Variant::deterministic
            ? build_unitary(spec)
            : build_isrm_from_spec(spec, RepresentationTag::momentum_p);
    write_matrix_cache(result.path, spec, u.matrix);
    return result;
}

}  // namespace intermap::harness
