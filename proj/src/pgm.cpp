/*
 * Copyright 2026 the cordic-dct authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cdct/pgm.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace cdct {

namespace {

/// Next whitespace-separated header token, skipping '#' comment lines.
std::string next_token(std::istream& in) {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
            continue;
        }
        if (std::isspace(ch))
            continue;
        tok.push_back(static_cast<char>(ch));
        while ((ch = in.peek()) != EOF && !std::isspace(ch)) {
            tok.push_back(static_cast<char>(in.get()));
        }
        return tok;
    }
    throw std::runtime_error("pgm: truncated header");
}

int parse_int(const std::string& tok, const char* what) {
    size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != tok.size() || v <= 0)
        throw std::runtime_error(std::string("pgm: bad ") + what + " '" + tok +
                                 "'");
    return v;
}

} // namespace

PgmImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("pgm: cannot open " + path);

    if (next_token(in) != "P5")
        throw std::runtime_error("pgm: " + path + " is not a binary (P5) PGM");
    PgmImage img;
    img.width = parse_int(next_token(in), "width");
    img.height = parse_int(next_token(in), "height");
    const int maxval = parse_int(next_token(in), "maxval");
    if (maxval > 255)
        throw std::runtime_error("pgm: only 8-bit samples supported, maxval " +
                                 std::to_string(maxval));
    // exactly one whitespace byte separates the header from the raster
    in.get();

    img.pixels.resize(static_cast<size_t>(img.width) * img.height);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw std::runtime_error("pgm: truncated pixel data in " + path);
    return img;
}

} // namespace cdct
