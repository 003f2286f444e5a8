#pragma once

#include "config.hpp"
#include "output.hpp"

namespace flatline::cli {

Record surface_build(const Config& cfg);
Record surface_unfold(const Config& cfg);
Record surface_info(const Config& cfg);

Record flow_trace(const Config& cfg);
Record flow_birkhoff(const Config& cfg);
Record flow_twisted(const Config& cfg);

Record renorm_lyapunov(const Config& cfg);
Record renorm_loop(const Config& cfg);
Record renorm_recurrence(const Config& cfg);

Record hodge_norm(const Config& cfg);
Record hodge_bform(const Config& cfg);
Record hodge_lambda(const Config& cfg);
Record hodge_variation(const Config& cfg);
Record hodge_twisted_rank(const Config& cfg);
Record hodge_lambda_sharp(const Config& cfg);

Record spectral_veech(const Config& cfg);
Record spectral_decay(const Config& cfg);
Record spectral_deviation(const Config& cfg);
Record spectral_ostrowski(const Config& cfg);
Record spectral_measure(const Config& cfg);

Record corpus(const Config& cfg);

}  // namespace flatline::cli
