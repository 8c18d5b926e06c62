#include "spa/gzip.hpp"

#include "spa/errors.hpp"

#include <zlib.h>

namespace spa {

std::string gzip_compress(std::string_view bytes, int level) {
    z_stream zs{};
    // windowBits 15 + 16 selects the gzip wrapper.
    if (deflateInit2(&zs, level, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK)
        fail(ErrorKind::internal, "deflateInit2 failed");

    zs.next_in = reinterpret_cast<Bytef *>(const_cast<char *>(bytes.data()));
    zs.avail_in = static_cast<uInt>(bytes.size());

    std::string out;
    char buf[1 << 15];
    int rc;
    do {
        zs.next_out = reinterpret_cast<Bytef *>(buf);
        zs.avail_out = sizeof(buf);
        rc = deflate(&zs, Z_FINISH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            deflateEnd(&zs);
            fail(ErrorKind::internal, "deflate failed with code " + std::to_string(rc));
        }
        out.append(buf, sizeof(buf) - zs.avail_out);
    } while (rc != Z_STREAM_END);
    deflateEnd(&zs);
    return out;
}

double gzip_ratio(std::string_view bytes, int level) {
    if (bytes.empty())
        fail(ErrorKind::precondition, "compression ratio of an empty byte stream");
    std::string compressed = gzip_compress(bytes, level);
    return static_cast<double>(bytes.size()) / static_cast<double>(compressed.size());
}

std::string join_with_newlines(const std::vector<std::string> &texts) {
    std::string out;
    for (size_t i = 0; i < texts.size(); ++i) {
        if (i > 0) out += '\n';
        out += texts[i];
    }
    return out;
}

} // namespace spa
