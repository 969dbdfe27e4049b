#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "seasoncast/forecast.hpp"
#include "seasoncast/trainer.hpp"

using namespace seasoncast;

namespace {

EnergySeries ramp_series(std::size_t months, double first = 100000.0, double step = 10000.0) {
    EnergySeries series;
    series.start = MonthIndex{1};
    for (std::size_t i = 0; i < months; ++i) {
        series.values.push_back(first + step * static_cast<double>(i));
    }
    return series;
}

Mlp constant_net(std::size_t input_width, double value) {
    Mlp net = Mlp::create(std::vector<std::size_t>{input_width, 3, 2, 1}, 0);
    std::vector<double> params(net.parameter_count(), 0.0);
    params.back() = value;
    set_params(net, params);
    return net;
}

}  // namespace

TEST_CASE("window builder counts and widths") {
    ScalerConfig scaler;
    SeasonConfig seasons;

    WindowedDataset ds = build_windows(ramp_series(22), scaler, seasons);
    CHECK(ds.size() == 18);  // 22 months, window 4
    CHECK(ds.input_width() == 6);

    SeasonConfig off;
    off.enabled = false;
    CHECK(build_windows(ramp_series(22), scaler, off).input_width() == 4);

    for (std::size_t len = 5; len <= 30; ++len) {
        CHECK(build_windows(ramp_series(len), scaler, seasons).size() == len - 4);
    }
}

TEST_CASE("window builder rejects short series") {
    ScalerConfig scaler;
    SeasonConfig seasons;
    CHECK_THROWS_AS(build_windows(ramp_series(4), scaler, seasons), std::invalid_argument);
    CHECK_THROWS_AS(build_windows(ramp_series(10), scaler, seasons, 0), std::invalid_argument);
}

TEST_CASE("constant series maps to constant windows") {
    EnergySeries series;
    series.start = MonthIndex{1};
    series.values.assign(10, 250000.0);
    WindowedDataset ds = build_windows(series, ScalerConfig{}, SeasonConfig{});
    for (const auto& input : ds.inputs) {
        for (std::size_t k = 0; k < 4; ++k) CHECK(input[k] == 0.5);
    }
    for (double t : ds.targets) CHECK(t == 0.5);
}

TEST_CASE("first window of a January 2002 series targets May 2002") {
    WindowedDataset ds = build_windows(ramp_series(22), ScalerConfig{}, SeasonConfig{});
    CHECK(ds.target_months.front() == MonthIndex{5});
    CHECK(ds.target_months.front().calendar_month() == 5);
    CHECK(ds.target_months.front().year() == 2002);
    // season columns carry the target month's encoding
    SeasonEncoding may = season_membership(MonthIndex{5});
    CHECK(ds.inputs.front()[4] == may.winter);
    CHECK(ds.inputs.front()[5] == may.summer);
    // and the lag block is oldest-first
    ScalerConfig scaler;
    CHECK(ds.inputs.front()[0] == scale(100000.0, scaler));
    CHECK(ds.inputs.front()[3] == scale(130000.0, scaler));
    CHECK(ds.targets.front() == scale(140000.0, scaler));
}

TEST_CASE("season columns always encode the target month") {
    WindowedDataset ds = build_windows(ramp_series(30), ScalerConfig{}, SeasonConfig{});
    for (std::size_t i = 0; i < ds.size(); ++i) {
        SeasonEncoding enc = season_membership(ds.target_months[i]);
        CHECK(ds.inputs[i][4] == enc.winter);
        CHECK(ds.inputs[i][5] == enc.summer);
    }
}

TEST_CASE("train/test split") {
    WindowedDataset ds = build_windows(ramp_series(22), ScalerConfig{}, SeasonConfig{});
    auto [train_ds, test_ds] = split_train_test(ds);
    CHECK(train_ds.size() == 14);
    CHECK(test_ds.size() == 4);

    CHECK_THROWS_AS(split_train_test(ds, 0), std::invalid_argument);
    CHECK_THROWS_AS(split_train_test(ds, ds.size()), std::invalid_argument);

    // concatenating the parts reproduces the dataset
    WindowedDataset joined;
    joined.inputs = train_ds.inputs;
    joined.inputs.insert(joined.inputs.end(), test_ds.inputs.begin(), test_ds.inputs.end());
    joined.targets = train_ds.targets;
    joined.targets.insert(joined.targets.end(), test_ds.targets.begin(), test_ds.targets.end());
    joined.target_months = train_ds.target_months;
    joined.target_months.insert(joined.target_months.end(), test_ds.target_months.begin(),
                                test_ds.target_months.end());
    CHECK(joined.inputs == ds.inputs);
    CHECK(joined.targets == ds.targets);
    CHECK(joined.target_months == ds.target_months);
}

TEST_CASE("one-step prediction is the forward pass on the assembled input") {
    Mlp net = Mlp::create(std::vector<std::size_t>{6, 4, 2, 1}, 33);
    std::vector<double> lags{0.2, 0.3, 0.4, 0.5};
    SeasonEncoding enc = season_membership(MonthIndex{9});

    std::vector<double> assembled{0.2, 0.3, 0.4, 0.5, enc.winter, enc.summer};
    CHECK(predict_one_step(net, lags, enc) == forward_mlp(net, assembled));

    Mlp zero = constant_net(6, 0.0);
    CHECK(predict_one_step(zero, lags, enc) == 0.0);
}

TEST_CASE("elman one-step prediction commits the context") {
    ElmanNet net = ElmanNet::create(std::vector<std::size_t>{6, 4, 2, 1}, 3);
    std::vector<double> before = net.context;
    predict_one_step(net, std::vector<double>{0.2, 0.3, 0.4, 0.5},
                     season_membership(MonthIndex{2}));
    CHECK(net.context != before);
}

TEST_CASE("multi-step prediction basics") {
    PredictConfig cfg;

    SUBCASE("a constant network is a fixed point of the loop") {
        Mlp net = constant_net(6, 0.42);
        ForecastResult result =
            predict_multistep(net, std::vector<double>{0.5, 0.5, 0.5, 0.5}, MonthIndex{5}, 12, cfg);
        REQUIRE(result.size() == 12);
        for (double s : result.scaled) CHECK(s == 0.42);
        for (double m : result.mwh) CHECK(m == unscale(0.42, cfg.scaler));
        CHECK(result.mode == ForecastMode::multi_step);
    }

    SUBCASE("horizon 27 from May 2002 ends in July 2004") {
        Mlp net = Mlp::create(std::vector<std::size_t>{6, 8, 4, 1}, 1);
        ForecastResult result =
            predict_multistep(net, std::vector<double>{0.5, 0.6, 0.7, 0.6}, MonthIndex{5}, 27, cfg);
        REQUIRE(result.size() == 27);
        CHECK(result.months.front() == MonthIndex{5});
        CHECK(result.months.front().year() == 2002);
        CHECK(result.months.front().calendar_month() == 5);
        CHECK(result.months.back().year() == 2004);
        CHECK(result.months.back().calendar_month() == 7);
    }

    SUBCASE("horizon 1 equals one-step prediction") {
        Mlp net = Mlp::create(std::vector<std::size_t>{6, 8, 4, 1}, 2);
        std::vector<double> lags{0.4, 0.5, 0.6, 0.5};
        ForecastResult result = predict_multistep(net, lags, MonthIndex{5}, 1, cfg);
        CHECK(result.scaled[0] == predict_one_step(net, lags, season_membership(MonthIndex{5})));
    }

    SUBCASE("non-positive horizon is rejected") {
        Mlp net = Mlp::create(std::vector<std::size_t>{6, 8, 4, 1}, 2);
        CHECK_THROWS_AS(
            predict_multistep(net, std::vector<double>{0.5, 0.5, 0.5, 0.5}, MonthIndex{5}, 0, cfg),
            std::invalid_argument);
    }

    SUBCASE("seed width must match the network") {
        Mlp net = Mlp::create(std::vector<std::size_t>{6, 8, 4, 1}, 2);
        CHECK_THROWS_AS(
            predict_multistep(net, std::vector<double>{0.5, 0.5}, MonthIndex{5}, 3, cfg),
            std::invalid_argument);
    }
}

TEST_CASE("multi-step runs compose") {
    Mlp net = Mlp::create(std::vector<std::size_t>{6, 8, 4, 1}, 14);
    PredictConfig cfg;
    std::vector<double> seed{0.45, 0.55, 0.5, 0.48};

    ForecastResult whole = predict_multistep(net, seed, MonthIndex{5}, 11, cfg);

    ForecastResult head = predict_multistep(net, seed, MonthIndex{5}, 6, cfg);
    std::vector<double> mid_seed(head.scaled.end() - 4, head.scaled.end());
    ForecastResult tail = predict_multistep(net, mid_seed, MonthIndex{5 + 6}, 5, cfg);

    for (int i = 0; i < 6; ++i) CHECK(whole.scaled[i] == head.scaled[i]);
    for (int i = 0; i < 5; ++i) CHECK(whole.scaled[6 + i] == tail.scaled[i]);
}

TEST_CASE("multi-step prediction is reproducible") {
    Mlp net = Mlp::create(std::vector<std::size_t>{6, 8, 4, 1}, 5);
    PredictConfig cfg;
    std::vector<double> seed{0.4, 0.5, 0.6, 0.5};
    ForecastResult a = predict_multistep(net, seed, MonthIndex{7}, 24, cfg);
    ForecastResult b = predict_multistep(net, seed, MonthIndex{7}, 24, cfg);
    CHECK(a.scaled == b.scaled);
    CHECK(a.mwh == b.mwh);
}

TEST_CASE("evaluation matches an independent mse recomputation") {
    Mlp net = Mlp::create(std::vector<std::size_t>{6, 5, 3, 1}, 8);
    WindowedDataset ds = build_windows(ramp_series(20), ScalerConfig{}, SeasonConfig{});

    Evaluation eval = evaluate(net, ds);

    std::vector<double> predictions;
    for (const auto& input : ds.inputs) predictions.push_back(forward_mlp(net, input));
    CHECK(eval.mse == mse(predictions, ds.targets));
    REQUIRE(eval.residuals.size() == ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        CHECK(eval.residuals[i] == predictions[i] - ds.targets[i]);
    }
}

TEST_CASE("evaluation of a perfect constant net is zero") {
    EnergySeries series;
    series.start = MonthIndex{1};
    series.values.assign(12, 250000.0);
    WindowedDataset ds = build_windows(series, ScalerConfig{}, SeasonConfig{});
    Mlp net = constant_net(6, 0.5);
    CHECK(evaluate(net, ds).mse == 0.0);

    WindowedDataset empty;
    CHECK_THROWS_AS(evaluate(net, empty), std::invalid_argument);
}

TEST_CASE("elman evaluation is sequential and stateful") {
    ElmanNet net = ElmanNet::create(std::vector<std::size_t>{6, 4, 2, 1}, 12);
    WindowedDataset ds = build_windows(ramp_series(15), ScalerConfig{}, SeasonConfig{});

    net.reset_context();
    Evaluation warm = evaluate(net, ds);
    std::vector<double> context_after = net.context;
    CHECK(context_after != std::vector<double>(4, 0.0));

    // rerunning from a reset context reproduces the same result
    net.reset_context();
    Evaluation again = evaluate(net, ds);
    CHECK(again.mse == warm.mse);
    CHECK(net.context == context_after);
}

TEST_CASE("synthetic series generator") {
    SyntheticConfig cfg;
    cfg.noise_sd_mwh = 0.0;

    EnergySeries series = generate_synthetic(cfg);
    REQUIRE(series.size() == 22);
    CHECK(series.start == MonthIndex{1});
    CHECK(series.values[0] == doctest::Approx(310000.0).epsilon(1e-12));  // January peak
    CHECK(series.values[6] == doctest::Approx(190000.0).epsilon(1e-12));  // July trough

    SUBCASE("same seed gives the same series") {
        SyntheticConfig noisy = cfg;
        noisy.noise_sd_mwh = 5000.0;
        noisy.seed = 99;
        EnergySeries a = generate_synthetic(noisy);
        EnergySeries b = generate_synthetic(noisy);
        CHECK(a.values == b.values);

        noisy.seed = 100;
        CHECK(generate_synthetic(noisy).values != a.values);
    }

    SUBCASE("trend shifts consecutive months") {
        SyntheticConfig trended = cfg;
        trended.trend_mwh_per_month = 1000.0;
        EnergySeries flat = generate_synthetic(cfg);
        EnergySeries sloped = generate_synthetic(trended);
        for (std::size_t i = 0; i < flat.size(); ++i) {
            CHECK(sloped.values[i] ==
                  doctest::Approx(flat.values[i] + 1000.0 * static_cast<double>(i)));
        }
    }

    SUBCASE("values are clamped at zero") {
        SyntheticConfig sinking = cfg;
        sinking.base_mwh = 100.0;
        sinking.amplitude_mwh = 50.0;
        sinking.trend_mwh_per_month = -40.0;
        sinking.months = 24;
        EnergySeries series2 = generate_synthetic(sinking);
        bool hit_zero = false;
        for (double v : series2.values) {
            CHECK(v >= 0.0);
            hit_zero = hit_zero || v == 0.0;
        }
        CHECK(hit_zero);
    }

    SUBCASE("parameter domain violations") {
        SyntheticConfig bad = cfg;
        bad.amplitude_mwh = bad.base_mwh;
        CHECK_THROWS_AS(generate_synthetic(bad), std::invalid_argument);
        bad = cfg;
        bad.months = 5;
        CHECK_THROWS_AS(generate_synthetic(bad), std::invalid_argument);
        bad = cfg;
        bad.noise_sd_mwh = -1.0;
        CHECK_THROWS_AS(generate_synthetic(bad), std::invalid_argument);
    }
}
