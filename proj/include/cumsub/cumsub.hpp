#pragma once

#include "analysis.hpp"
#include "closed_form.hpp"
#include "core.hpp"
#include "multipile.hpp"
#include "serialize.hpp"
#include "truncated.hpp"
