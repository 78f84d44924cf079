#include "dphh/ingest.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>
#include <string>

#include "dphh/errors.hpp"

namespace dphh {

namespace {
constexpr std::size_t kBufferSize = 1 << 16;
}  // namespace

std::string_view to_string(InputFormat f) noexcept {
    return f == InputFormat::tokens ? "tokens" : "u64le";
}

InputFormat parse_input_format(std::string_view name) {
    if (name == "tokens") return InputFormat::tokens;
    if (name == "u64le") return InputFormat::u64le;
    throw InvalidParameter("unknown input format '" + std::string(name) +
                           "' (expected tokens or u64le)");
}

StreamReader::StreamReader(const std::filesystem::path& path, InputFormat format)
    : in_(path, std::ios::binary), format_(format), buf_(kBufferSize) {
    if (!in_) throw std::runtime_error("cannot open " + path.string());
}

bool StreamReader::fill() {
    if (pos_ < end_) return true;
    in_.read(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    end_ = static_cast<std::size_t>(in_.gcount());
    pos_ = 0;
    return end_ > 0;
}

bool StreamReader::next(Label& out) {
    return format_ == InputFormat::tokens ? next_token(out) : next_u64(out);
}

bool StreamReader::next_token(Label& out) {
    const std::uint64_t start = offset_;
    std::uint64_t value = 0;
    std::size_t digits = 0;
    bool saw_cr = false;
    for (;;) {
        if (!fill()) {
            if (digits == 0 && !saw_cr) return false;  // clean end of input
            break;
        }
        const char c = buf_[pos_++];
        ++offset_;
        if (c == '\n') {
            if (digits == 0) throw ParseError("empty line", start);
            break;
        }
        if (saw_cr) throw ParseError("stray carriage return", start);
        if (c == '\r') {
            saw_cr = true;
            continue;
        }
        if (c < '0' || c > '9') {
            throw ParseError(std::string("invalid character in label line"), start);
        }
        const std::uint64_t d = static_cast<std::uint64_t>(c - '0');
        if (value > (~std::uint64_t{0} - d) / 10) throw ParseError("label exceeds 64 bits", start);
        value = value * 10 + d;
        ++digits;
    }
    if (digits == 0) throw ParseError("empty line", start);
    out = value;
    return true;
}

bool StreamReader::next_u64(Label& out) {
    const std::uint64_t start = offset_;
    unsigned char raw[8];
    std::size_t got = 0;
    while (got < 8) {
        if (!fill()) {
            if (got == 0) return false;
            throw ParseError("truncated 8-byte record", start);
        }
        const std::size_t take = std::min<std::size_t>(8 - got, end_ - pos_);
        std::memcpy(raw + got, buf_.data() + pos_, take);
        pos_ += take;
        got += take;
        offset_ += take;
    }
    std::uint64_t v = 0;
    for (int b = 7; b >= 0; --b) v = (v << 8) | raw[b];
    out = v;
    return true;
}

void ingest_each(const std::filesystem::path& path, InputFormat format,
                 const std::function<void(Label)>& fn) {
    StreamReader reader(path, format);
    Label x;
    while (reader.next(x)) fn(x);
}

Stream ingest(const std::filesystem::path& path, InputFormat format) {
    Stream out;
    ingest_each(path, format, [&](Label x) { out.push_back(x); });
    return out;
}

void write_stream(const std::filesystem::path& path, InputFormat format, StreamView stream) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    if (format == InputFormat::tokens) {
        std::string line;
        for (Label x : stream) {
            line = std::to_string(x);
            line.push_back('\n');
            out.write(line.data(), static_cast<std::streamsize>(line.size()));
        }
    } else {
        for (Label x : stream) {
            char raw[8];
            for (int b = 0; b < 8; ++b) raw[b] = static_cast<char>((x >> (8 * b)) & 0xff);
            out.write(raw, 8);
        }
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace dphh
