#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string_view>
#include <vector>

#include "dphh/types.hpp"

namespace dphh {

/// tokens: one decimal u64 label per line ("\n" or "\r\n"; the last newline
/// is optional). u64le: packed little-endian 64-bit labels.
enum class InputFormat { tokens, u64le };

std::string_view to_string(InputFormat f) noexcept;
/// Throws InvalidParameter for an unknown name.
InputFormat parse_input_format(std::string_view name);

/// Pull-based reader; holds one buffer, never the whole file.
class StreamReader {
public:
    /// Throws std::runtime_error if the file cannot be opened.
    StreamReader(const std::filesystem::path& path, InputFormat format);

    /// Next label, or false at end of input. Throws ParseError with the byte
    /// offset of the malformed line or truncated record.
    bool next(Label& out);

    /// Bytes consumed so far.
    std::uint64_t offset() const noexcept { return offset_; }

private:
    bool fill();
    bool next_token(Label& out);
    bool next_u64(Label& out);

    std::ifstream in_;
    InputFormat format_;
    std::vector<char> buf_;
    std::size_t pos_ = 0;
    std::size_t end_ = 0;
    std::uint64_t offset_ = 0;
};

/// Calls fn for every label in the file, in order.
void ingest_each(const std::filesystem::path& path, InputFormat format,
                 const std::function<void(Label)>& fn);

/// All labels in the file.
Stream ingest(const std::filesystem::path& path, InputFormat format);

void write_stream(const std::filesystem::path& path, InputFormat format, StreamView stream);

}  // namespace dphh
