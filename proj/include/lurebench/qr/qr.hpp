#pragma once

#include "lurebench/qr/decode.hpp"
#include "lurebench/qr/encode.hpp"
#include "lurebench/qr/gf256.hpp"
#include "lurebench/qr/matrix.hpp"
#include "lurebench/qr/render.hpp"

namespace lurebench {

using qr::BitGrid;
using qr::DecodeResult;
using qr::EccLevel;
using qr::QrMatrix;

using qr::byte_payload_capacity;
using qr::parse_pbm;
using qr::parse_svg_grid;
using qr::qr_decode;
using qr::qr_decode_grid;
using qr::qr_encode;
using qr::to_pbm;
using qr::to_svg;

}  // namespace lurebench
