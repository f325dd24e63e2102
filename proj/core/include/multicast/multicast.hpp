#pragma once

#include "multicast/backend.hpp"
#include "multicast/baselines.hpp"
#include "multicast/benchmark.hpp"
#include "multicast/config.hpp"
#include "multicast/dataset.hpp"
#include "multicast/error.hpp"
#include "multicast/http_backend.hpp"
#include "multicast/matrix.hpp"
#include "multicast/metrics.hpp"
#include "multicast/multiplex.hpp"
#include "multicast/pipeline.hpp"
#include "multicast/plot.hpp"
#include "multicast/report.hpp"
#include "multicast/sax.hpp"
#include "multicast/scaling.hpp"
#include "multicast/series.hpp"
