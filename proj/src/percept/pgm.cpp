#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "strata/error.hpp"
#include "strata/image.hpp"

namespace strata::percept {

GrayImage::GrayImage(int w, int h, std::uint8_t fill)
    : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

namespace {

class Reader {
public:
    explicit Reader(std::string_view s) : s_(s) {}

    void skip_space_and_comments() {
        while (pos_ < s_.size()) {
            const char c = s_[pos_];
            if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n' && s_[pos_] != '\r')
                    ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    // Header numbers are required; running out here means a cut header.
    long header_number(const char* what) {
        skip_space_and_comments();
        if (pos_ >= s_.size())
            throw Error(ErrorCode::truncated_data, std::string("missing ") + what);
        return number(what);
    }

    long number(const char* what) {
        long v = 0;
        const char* first = s_.data() + pos_;
        const char* last = s_.data() + s_.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr == first)
            throw Error(ErrorCode::parse_error, std::string("bad ") + what);
        pos_ += static_cast<std::size_t>(ptr - first);
        return v;
    }

    bool at_end() const { return pos_ >= s_.size(); }
    std::size_t pos() const { return pos_; }
    void advance(std::size_t n) { pos_ += n; }
    std::string_view rest() const { return s_.substr(pos_); }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

GrayImage load_pgm(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
        throw Error(ErrorCode::bad_magic, "expected P2 or P5");
    const bool ascii = bytes[1] == '2';
    Reader in(bytes.substr(2));
    if (!in.at_end() && !std::isspace(static_cast<unsigned char>(in.rest()[0])) && in.rest()[0] != '#')
        throw Error(ErrorCode::bad_magic, "expected P2 or P5");

    const long w = in.header_number("width");
    const long h = in.header_number("height");
    const long maxval = in.header_number("maxval");
    if (w <= 0 || h <= 0 || w > 1 << 16 || h > 1 << 16)
        throw Error(ErrorCode::parse_error, "bad image dimensions");
    if (maxval > 255)
        throw Error(ErrorCode::maxval_overflow, "maxval " + std::to_string(maxval) + " > 255");
    if (maxval <= 0)
        throw Error(ErrorCode::parse_error, "maxval must be positive");

    GrayImage img(static_cast<int>(w), static_cast<int>(h));
    const std::size_t n = img.pixels.size();
    if (ascii) {
        for (std::size_t i = 0; i < n; ++i) {
            in.skip_space_and_comments();
            if (in.at_end())
                throw Error(ErrorCode::truncated_data, "expected " + std::to_string(n) +
                                                           " pixels, got " + std::to_string(i));
            const long v = in.number("pixel");
            if (v < 0 || v > maxval)
                throw Error(ErrorCode::parse_error, "pixel value out of range");
            img.pixels[i] = static_cast<std::uint8_t>(v);
        }
    } else {
        // Exactly one whitespace byte separates the header from the raster.
        if (in.at_end() || !std::isspace(static_cast<unsigned char>(in.rest()[0])))
            throw Error(ErrorCode::truncated_data, "missing raster");
        in.advance(1);
        const std::string_view raster = in.rest();
        if (raster.size() < n)
            throw Error(ErrorCode::truncated_data, "expected " + std::to_string(n) +
                                                       " bytes, got " + std::to_string(raster.size()));
        for (std::size_t i = 0; i < n; ++i) {
            const auto v = static_cast<std::uint8_t>(raster[i]);
            if (v > maxval)
                throw Error(ErrorCode::parse_error, "pixel value out of range");
            img.pixels[i] = v;
        }
    }
    return img;
}

GrayImage load_pgm_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrorCode::file_not_found, path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return load_pgm(ss.str());
}

std::string encode_pgm(const GrayImage& image) {
    std::string out = "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) +
                      "\n255\n";
    out.append(reinterpret_cast<const char*>(image.pixels.data()), image.pixels.size());
    return out;
}

void write_pgm_file(const std::string& path, const GrayImage& image) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrorCode::file_not_found, "cannot write " + path);
    const std::string data = encode_pgm(image);
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
}

} // namespace strata::percept
