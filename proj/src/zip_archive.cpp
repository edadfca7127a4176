#include "zip_archive.hpp"

#include "cellcheck/errors.hpp"

#include <zlib.h>

#include <algorithm>

namespace cellcheck::detail {

namespace {

constexpr std::uint32_t kLocalHeaderSignature = 0x04034b50;
constexpr std::uint32_t kCentralHeaderSignature = 0x02014b50;
constexpr std::uint32_t kEndOfDirectorySignature = 0x06054b50;
constexpr std::size_t kEndOfDirectorySize = 22;

std::uint16_t u16(std::string_view b, std::size_t at) {
    if (at + 2 > b.size()) throw FormatError("truncated ZIP archive");
    return static_cast<std::uint16_t>(static_cast<unsigned char>(b[at]) |
                                      (static_cast<unsigned char>(b[at + 1]) << 8));
}

std::uint32_t u32(std::string_view b, std::size_t at) {
    return static_cast<std::uint32_t>(u16(b, at)) | (static_cast<std::uint32_t>(u16(b, at + 2)) << 16);
}

}  // namespace

ZipArchive::ZipArchive(std::string_view bytes) : bytes_(bytes) {
    if (bytes.size() < 4 || u32(bytes, 0) != kLocalHeaderSignature) {
        throw FormatError("not a ZIP archive");
    }
    if (bytes.size() < kEndOfDirectorySize) throw FormatError("truncated ZIP archive");

    // The end-of-directory record sits at the end, followed by an optional
    // comment of up to 64 KiB.
    std::size_t lowest = bytes.size() > kEndOfDirectorySize + 0xFFFF ? bytes.size() - kEndOfDirectorySize - 0xFFFF : 0;
    std::optional<std::size_t> eocd;
    for (std::size_t at = bytes.size() - kEndOfDirectorySize + 1; at-- > lowest;) {
        if (u32(bytes, at) == kEndOfDirectorySignature) {
            eocd = at;
            break;
        }
    }
    if (!eocd) throw FormatError("ZIP end-of-directory record not found");

    std::uint16_t count = u16(bytes, *eocd + 10);
    std::uint32_t directory_offset = u32(bytes, *eocd + 16);
    if (count == 0xFFFF || directory_offset == 0xFFFFFFFF) throw FormatError("ZIP64 archives are not supported");

    std::size_t at = directory_offset;
    for (std::uint16_t i = 0; i < count; ++i) {
        if (u32(bytes, at) != kCentralHeaderSignature) throw FormatError("corrupt ZIP central directory");
        std::uint16_t flags = u16(bytes, at + 8);
        Entry entry{u16(bytes, at + 10), u32(bytes, at + 16), u32(bytes, at + 20), u32(bytes, at + 24),
                    u32(bytes, at + 42)};
        std::uint16_t name_length = u16(bytes, at + 28);
        std::uint16_t extra_length = u16(bytes, at + 30);
        std::uint16_t comment_length = u16(bytes, at + 32);
        if (at + 46 + name_length > bytes.size()) throw FormatError("truncated ZIP central directory");
        std::string name(bytes.substr(at + 46, name_length));
        if (flags & 0x1) throw FormatError("encrypted ZIP entry " + name);
        entries_.emplace(std::move(name), entry);
        at += 46 + name_length + extra_length + comment_length;
    }
}

std::optional<std::string> ZipArchive::read(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) return std::nullopt;
    const Entry& entry = it->second;

    std::size_t header = entry.local_header_offset;
    if (u32(bytes_, header) != kLocalHeaderSignature) throw FormatError("corrupt ZIP local header for " + name);
    std::size_t data = header + 30 + u16(bytes_, header + 26) + u16(bytes_, header + 28);
    if (data + entry.compressed_size > bytes_.size()) throw FormatError("truncated ZIP entry " + name);
    std::string_view compressed = bytes_.substr(data, entry.compressed_size);

    std::string out;
    if (entry.method == 0) {
        out.assign(compressed);
    } else if (entry.method == 8 && entry.uncompressed_size == 0) {
        // nothing to inflate
    } else if (entry.method == 8) {
        out.resize(entry.uncompressed_size);
        z_stream stream{};
        if (inflateInit2(&stream, -MAX_WBITS) != Z_OK) throw FormatError("cannot initialise inflate");
        stream.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
        stream.avail_in = static_cast<uInt>(compressed.size());
        stream.next_out = reinterpret_cast<Bytef*>(out.data());
        stream.avail_out = static_cast<uInt>(out.size());
        int status = inflate(&stream, Z_FINISH);
        std::size_t produced = stream.total_out;
        inflateEnd(&stream);
        if (status != Z_STREAM_END || produced != out.size()) throw FormatError("corrupt deflate data in " + name);
    } else {
        throw FormatError("unsupported ZIP compression method " + std::to_string(entry.method) + " for " + name);
    }

    auto crc = crc32(0L, reinterpret_cast<const Bytef*>(out.data()), static_cast<uInt>(out.size()));
    if (crc != entry.crc) throw FormatError("CRC mismatch in " + name);
    return out;
}

}  // namespace cellcheck::detail
