use greycast::fixtures::CaseId;
use greycast::{search_order, ModelVariant, Objective, OrderSearchConfig64};

fn best_order(case: CaseId, variant: ModelVariant, objective: Objective) -> f64 {
    let data = case.dataset().unwrap().to_series();
    let config = OrderSearchConfig64::new(variant, case.nu())
        .with_objective(objective)
        .with_step(1e-3);
    search_order(&data, &config).unwrap().r
}

#[test]
fn full_range_rmspe_selects_the_published_orders() {
    let cases = [
        (CaseId::Oilfield, ModelVariant::Fagmo11k, 0.4052),
        (CaseId::Oilfield, ModelVariant::Fagm11k, 0.4073),
        (CaseId::Oilfield, ModelVariant::Fagm11, 0.1106),
        (CaseId::Settlement, ModelVariant::Fagmo11k, 0.2295),
        (CaseId::Nuclear, ModelVariant::Fagmo11k, 1.1595),
        (CaseId::Nuclear, ModelVariant::Fagm11, 1.4127),
    ];
    for (case, variant, published) in cases {
        let r = best_order(case, variant, Objective::Rmspe);
        assert!(
            (r - published).abs() < 0.01,
            "{case} {variant}: {r} vs {published}"
        );
    }
}

#[test]
fn in_sample_objective_prefers_other_orders() {
    let oil = best_order(CaseId::Oilfield, ModelVariant::Fagmo11k, Objective::Rmspepr);
    let nuclear = best_order(CaseId::Nuclear, ModelVariant::Fagmo11k, Objective::Rmspepr);
    assert!((oil - 0.484).abs() < 0.005, "{oil}");
    assert!((nuclear - 0.942).abs() < 0.005, "{nuclear}");
}
