#include "scinda/gzip.hpp"

#include <fstream>
#include <iterator>

#include <zlib.h>

#include "scinda/error.hpp"

namespace scinda::gz {

std::string decompress(std::string_view bytes, const std::string& name)
{
    if (bytes.empty())
        throw ArchiveError(name, "empty archive");
    if (bytes.size() < 18 || static_cast<unsigned char>(bytes[0]) != 0x1f ||
        static_cast<unsigned char>(bytes[1]) != 0x8b)
        throw ArchiveError(name, "not a gzip stream");

    z_stream zs{};
    if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK)
        throw ArchiveError(name, "inflateInit2 failed");

    std::string out;
    char buf[1 << 16];
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
    zs.avail_in = static_cast<uInt>(bytes.size());
    int rc = Z_OK;
    for (;;) {
        zs.next_out = reinterpret_cast<Bytef*>(buf);
        zs.avail_out = sizeof buf;
        rc = inflate(&zs, Z_NO_FLUSH);
        out.append(buf, sizeof buf - zs.avail_out);
        if (rc == Z_STREAM_END) {
            // Concatenated members are legal gzip.
            if (zs.avail_in == 0)
                break;
            if (zs.avail_in < 2 || zs.next_in[0] != 0x1f || zs.next_in[1] != 0x8b)
                break;   // trailing garbage after a complete member, as gunzip tolerates
            inflateReset(&zs);
            continue;
        }
        if (rc == Z_OK)
            continue;
        if (rc == Z_BUF_ERROR && zs.avail_in == 0) {
            inflateEnd(&zs);
            throw ArchiveError(name, "truncated gzip member");
        }
        std::string msg = zs.msg ? zs.msg : "inflate failed";
        inflateEnd(&zs);
        throw ArchiveError(name, "corrupt gzip stream: " + msg);
    }
    inflateEnd(&zs);
    return out;
}

std::string compress(std::string_view data)
{
    z_stream zs{};
    if (deflateInit2(&zs, 6, Z_DEFLATED, 16 + MAX_WBITS, 8, Z_DEFAULT_STRATEGY) != Z_OK)
        throw Error("deflateInit2 failed");
    std::string out;
    out.resize(deflateBound(&zs, static_cast<uLong>(data.size())) + 32);
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    zs.avail_in = static_cast<uInt>(data.size());
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = deflate(&zs, Z_FINISH);
    const auto written = zs.total_out;
    deflateEnd(&zs);
    if (rc != Z_STREAM_END)
        throw Error("deflate failed");
    out.resize(written);
    return out;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad())
        throw IoError("read failure on " + path.string());
    return data;
}

std::string read_gzip_file(const std::filesystem::path& path)
{
    return decompress(read_file(path), path.string());
}

void write_file(const std::filesystem::path& path, std::string_view bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("write failure on " + path.string());
}

} // namespace scinda::gz
