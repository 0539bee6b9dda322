#pragma once

#include "lurebench/brand/builtin.hpp"
#include "lurebench/brand/compose.hpp"
#include "lurebench/brand/objects.hpp"
#include "lurebench/brand/profile.hpp"
#include "lurebench/bundle/bundle.hpp"
#include "lurebench/bundle/manifest.hpp"
#include "lurebench/core/entities.hpp"
#include "lurebench/core/ip.hpp"
#include "lurebench/core/lexicon.hpp"
#include "lurebench/core/rng.hpp"
#include "lurebench/core/sha256.hpp"
#include "lurebench/core/url.hpp"
#include "lurebench/dom/dom.hpp"
#include "lurebench/errors.hpp"
#include "lurebench/forge/forge.hpp"
#include "lurebench/forge/passes.hpp"
#include "lurebench/forge/render.hpp"
#include "lurebench/harness/agent.hpp"
#include "lurebench/harness/harness.hpp"
#include "lurebench/qr/qr.hpp"
#include "lurebench/scanner/features.hpp"
#include "lurebench/scanner/scanner.hpp"
#include "lurebench/version.hpp"
