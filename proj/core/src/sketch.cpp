#include "dphh/sketch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <string>

#include "dphh/errors.hpp"

namespace dphh {

namespace {

__extension__ typedef unsigned __int128 u128;

constexpr std::uint64_t high_word(std::uint64_t a_hi, std::uint64_t a_lo, std::uint64_t b_hi,
                                  std::uint64_t b_lo, std::uint64_t x) noexcept {
    const u128 a = (static_cast<u128>(a_hi) << 64) | a_lo;
    const u128 b = (static_cast<u128>(b_hi) << 64) | b_lo;
    return static_cast<std::uint64_t>((a * x + b) >> 64);
}

double median_in_place(std::span<double> v) {
    const std::size_t n = v.size();
    std::sort(v.begin(), v.end());
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void check_dims(std::size_t depth, std::size_t width) {
    if (depth == 0 || width == 0) {
        throw InvalidParameter("sketch depth and width must be at least 1");
    }
}

std::size_t ceil_positive(double v) { return static_cast<std::size_t>(std::ceil(v - 1e-12)); }

}  // namespace

std::string_view to_string(SketchKind kind) noexcept {
    return kind == SketchKind::count_min ? "count-min" : "count-sketch";
}

SketchDimensions cms_dimensions(double beta, double eta) {
    if (!(beta > 0.0 && beta < 1.0) || !(eta > 0.0 && eta < 1.0)) {
        throw InvalidParameter("beta and eta must lie in (0, 1)");
    }
    return {std::max<std::size_t>(1, ceil_positive(std::log2(1.0 / beta))),
            ceil_positive(2.0 / eta)};
}

SketchDimensions cs_dimensions(double beta, double eta) {
    if (!(beta > 0.0 && beta < 1.0) || !(eta > 0.0 && eta < 1.0)) {
        throw InvalidParameter("beta and eta must lie in (0, 1)");
    }
    return {std::max<std::size_t>(1, ceil_positive(std::log(1.0 / beta))),
            ceil_positive(3.0 / (eta * eta))};
}

SketchMatrix::SketchMatrix(SketchKind kind, std::size_t depth, std::size_t width,
                           std::uint64_t seed)
    : kind_(kind), depth_(depth), width_(width), seed_(seed) {
    check_dims(depth, width);
    if (depth > 0xffffffffu || width > 0xffffffffu) {
        throw InvalidParameter("sketch dimensions must fit in 32 bits");
    }
    hashes_.reserve(depth);
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < depth; ++i) {
        RowHash h{};
        h.a_hi = derive_seed(seed, k++);
        h.a_lo = derive_seed(seed, k++) | 1u;
        h.b_hi = derive_seed(seed, k++);
        h.b_lo = derive_seed(seed, k++);
        h.c_hi = derive_seed(seed, k++);
        h.c_lo = derive_seed(seed, k++) | 1u;
        h.d_hi = derive_seed(seed, k++);
        h.d_lo = derive_seed(seed, k++);
        hashes_.push_back(h);
    }
    cells_.assign(depth * width, 0.0);
}

std::size_t SketchMatrix::bucket(std::size_t row, Label label) const noexcept {
    const RowHash& h = hashes_[row];
    const std::uint64_t v = high_word(h.a_hi, h.a_lo, h.b_hi, h.b_lo, label);
    return static_cast<std::size_t>((static_cast<u128>(v) * width_) >> 64);
}

int SketchMatrix::sign(std::size_t row, Label label) const noexcept {
    if (kind_ == SketchKind::count_min) return 1;
    const RowHash& h = hashes_[row];
    return (high_word(h.c_hi, h.c_lo, h.d_hi, h.d_lo, label) >> 63) ? 1 : -1;
}

void SketchMatrix::update(Label label) noexcept {
    if (kind_ == SketchKind::count_min) {
        for (std::size_t i = 0; i < depth_; ++i) cells_[i * width_ + bucket(i, label)] += 1.0;
    } else {
        for (std::size_t i = 0; i < depth_; ++i) {
            cells_[i * width_ + bucket(i, label)] += static_cast<double>(sign(i, label));
        }
    }
}

double SketchMatrix::query(Label label) const noexcept {
    if (kind_ == SketchKind::count_min) {
        double best = cells_[bucket(0, label)];
        for (std::size_t i = 1; i < depth_; ++i) {
            best = std::min(best, cells_[i * width_ + bucket(i, label)]);
        }
        return best;
    }
    constexpr std::size_t kStack = 64;
    double stack[kStack];
    std::vector<double> heap;
    std::span<double> v;
    if (depth_ <= kStack) {
        v = std::span<double>(stack, depth_);
    } else {
        heap.resize(depth_);
        v = heap;
    }
    for (std::size_t i = 0; i < depth_; ++i) {
        v[i] = sign(i, label) * cells_[i * width_ + bucket(i, label)];
    }
    return median_in_place(v);
}

void SketchMatrix::privatize(double epsilon, NoiseSource& noise) {
    if (noised()) throw InvalidState("sketch is already noised");
    if (!(epsilon > 0.0)) throw InvalidParameter("epsilon must be positive");
    const double scale = 2.0 * static_cast<double>(depth_) / epsilon;
    for (double& c : cells_) c += sample_laplace(scale, noise);
    noise_scale_ = scale;
}

std::size_t SketchMatrix::bytes() const noexcept {
    return cells_.size() * sizeof(double) + hashes_.size() * sizeof(RowHash);
}

SketchMatrix cms_build(std::size_t depth, std::size_t width, std::uint64_t seed) {
    return SketchMatrix(SketchKind::count_min, depth, width, seed);
}

void cms_update(SketchMatrix& sketch, Label label) {
    if (sketch.kind() != SketchKind::count_min) throw InvalidKind("not a Count-Min sketch");
    sketch.update(label);
}

double cms_query(const SketchMatrix& sketch, Label label) {
    if (sketch.kind() != SketchKind::count_min) throw InvalidKind("not a Count-Min sketch");
    return sketch.query(label);
}

SketchMatrix cs_build(std::size_t depth, std::size_t width, std::uint64_t seed) {
    return SketchMatrix(SketchKind::count_sketch, depth, width, seed);
}

void cs_update(SketchMatrix& sketch, Label label) {
    if (sketch.kind() != SketchKind::count_sketch) throw InvalidKind("not a Count Sketch");
    sketch.update(label);
}

double cs_query(const SketchMatrix& sketch, Label label) {
    if (sketch.kind() != SketchKind::count_sketch) throw InvalidKind("not a Count Sketch");
    return sketch.query(label);
}

namespace {

std::vector<double> row_f2(const SketchMatrix& sketch) {
    if (sketch.kind() != SketchKind::count_sketch) {
        throw InvalidKind("F2 estimation needs a Count Sketch");
    }
    const double noise_energy = static_cast<double>(sketch.width()) * 2.0 *
                                sketch.noise_scale() * sketch.noise_scale();
    std::vector<double> rows(sketch.depth());
    for (std::size_t i = 0; i < sketch.depth(); ++i) {
        double s = 0.0;
        for (double c : sketch.row(i)) s += c * c;
        rows[i] = s - noise_energy;
    }
    return rows;
}

}  // namespace

double f2_estimate(const SketchMatrix& sketch) {
    auto rows = row_f2(sketch);
    return median_in_place(rows);
}

double f2_upper_bound(const SketchMatrix& sketch) {
    const auto rows = row_f2(sketch);
    const double top = std::max(0.0, *std::max_element(rows.begin(), rows.end()));
    return top * (1.0 + 3.0 * std::sqrt(2.0 / static_cast<double>(sketch.width())));
}

SketchMatrix privatize_sketch(SketchMatrix sketch, double epsilon, NoiseSource& noise) {
    sketch.privatize(epsilon, noise);
    return sketch;
}

namespace {

class Writer {
public:
    explicit Writer(std::vector<std::uint8_t>& out) : out_(out) {}
    template <typename T>
    void put(T v) {
        std::uint8_t raw[sizeof(T)];
        std::memcpy(raw, &v, sizeof(T));
        if constexpr (std::endian::native == std::endian::big) std::reverse(raw, raw + sizeof(T));
        out_.insert(out_.end(), raw, raw + sizeof(T));
    }

private:
    std::vector<std::uint8_t>& out_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}
    template <typename T>
    T get(const char* field) {
        if (in_.size() - pos_ < sizeof(T)) {
            throw ParseError(std::string("truncated sketch blob reading ") + field, pos_);
        }
        std::uint8_t raw[sizeof(T)];
        std::memcpy(raw, in_.data() + pos_, sizeof(T));
        if constexpr (std::endian::native == std::endian::big) std::reverse(raw, raw + sizeof(T));
        T v;
        std::memcpy(&v, raw, sizeof(T));
        pos_ += sizeof(T);
        return v;
    }
    std::size_t pos() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return in_.size() - pos_; }

private:
    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

constexpr char kMagic[4] = {'D', 'P', 'S', 'K'};

}  // namespace

std::vector<std::uint8_t> serialize_sketch(const SketchMatrix& sketch) {
    std::vector<std::uint8_t> out;
    out.reserve(34 + sketch.cells().size() * 8);
    out.insert(out.end(), kMagic, kMagic + 4);
    Writer w(out);
    w.put<std::uint32_t>(kSketchFormatVersion);
    w.put<std::uint8_t>(static_cast<std::uint8_t>(sketch.kind()));
    w.put<std::uint32_t>(static_cast<std::uint32_t>(sketch.depth()));
    w.put<std::uint32_t>(static_cast<std::uint32_t>(sketch.width()));
    w.put<std::uint64_t>(sketch.seed());
    w.put<std::uint8_t>(sketch.noised() ? 1 : 0);
    w.put<double>(sketch.noise_scale());
    for (double c : sketch.cells()) w.put<double>(c);
    return out;
}

SketchMatrix deserialize_sketch(std::span<const std::uint8_t> blob) {
    if (blob.size() < 4 || std::memcmp(blob.data(), kMagic, 4) != 0) {
        throw ParseError("bad sketch magic", 0);
    }
    Reader r(blob.subspan(4));
    const auto at = [&] { return 4 + r.pos(); };
    const std::size_t version_at = at();
    const auto version = r.get<std::uint32_t>("version");
    if (version != kSketchFormatVersion) {
        throw ParseError("unsupported sketch version " + std::to_string(version), version_at);
    }
    const std::size_t kind_at = at();
    const auto kind = r.get<std::uint8_t>("kind");
    if (kind > 1) throw ParseError("unknown sketch kind " + std::to_string(kind), kind_at);
    const std::size_t dims_at = at();
    const auto depth = r.get<std::uint32_t>("depth");
    const auto width = r.get<std::uint32_t>("width");
    if (depth == 0 || width == 0) throw ParseError("zero sketch dimension", dims_at);
    const auto seed = r.get<std::uint64_t>("seed");
    const std::size_t flag_at = at();
    const auto noised = r.get<std::uint8_t>("noised flag");
    if (noised > 1) throw ParseError("bad noised flag", flag_at);
    const std::size_t scale_at = at();
    const auto scale = r.get<double>("noise scale");
    if ((noised == 1) != (scale > 0.0)) {
        throw ParseError("noised flag disagrees with noise scale", scale_at);
    }
    const std::uint64_t cells = std::uint64_t{depth} * width;
    if (r.remaining() / 8 < cells) {
        throw ParseError("truncated sketch cells", at() + (r.remaining() / 8) * 8);
    }
    SketchMatrix s(static_cast<SketchKind>(kind), depth, width, seed);
    for (double& c : s.cells_) c = r.get<double>("cell");
    s.noise_scale_ = scale;
    if (r.remaining() != 0) throw ParseError("trailing bytes after sketch cells", at());
    return s;
}

}  // namespace dphh
