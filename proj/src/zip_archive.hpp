#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace cellcheck::detail {

/// Read-only view of a ZIP container held in memory. Supports stored and
/// deflated entries; ZIP64 and encrypted archives are rejected.
class ZipArchive {
public:
    /// Throws FormatError when `bytes` is not a readable ZIP archive.
    explicit ZipArchive(std::string_view bytes);

    bool contains(const std::string& name) const { return entries_.count(name) != 0; }
    /// Decompressed entry contents; empty optional when absent. Throws
    /// FormatError on corrupt data or CRC mismatch.
    std::optional<std::string> read(const std::string& name) const;

private:
    struct Entry {
        std::uint16_t method;
        std::uint32_t crc;
        std::uint32_t compressed_size;
        std::uint32_t uncompressed_size;
        std::uint32_t local_header_offset;
    };

    std::string_view bytes_;
    std::map<std::string, Entry> entries_;
};

}  // namespace cellcheck::detail
