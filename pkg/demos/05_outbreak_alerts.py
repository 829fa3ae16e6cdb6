"""
End-to-end outbreak detection on synthetic traffic
==================================================

The full loop: a synthetic message source emits Poisson background
chatter per (city, syndrome, hour) with one injected outbreak, every
hour is ingested through the filtering pipeline into the count store,
and the aberration detector scores each hour against a two-week
same-hour-of-day baseline. Counts more than two estimated standard
deviations above the baseline mean start climbing the alert bands.
"""
import tempfile
import time
from datetime import datetime, timedelta, timezone

from syndromic.aberration import band, c2_score
from syndromic.classifiers import ClassifierSpec, train_classifier
from syndromic.geo import City, CityRegistry
from syndromic.pipeline import Pipeline, PipelineConfig, default_blocklist, default_lexicon
from syndromic.service import ingest_tick
from syndromic.sources import OutbreakInjection, SyntheticSource, training_corpus
from syndromic.store import CountStore
from syndromic.syndromes import SYNDROMES

registry = CityRegistry(
    [
        City(name="paris", lat=48.8566, lon=2.3522, radius_km=30.0),
        City(name="london", lat=51.5074, lon=-0.1278, radius_km=30.0),
    ]
)

DAYS = 21
start = datetime(2026, 2, 1, tzinfo=timezone.utc)
onset = start + timedelta(days=18)
source = SyntheticSource(
    registry,
    seed=5,
    rate=6.0,
    chatter_rate=4.0,
    outbreaks=[
        OutbreakInjection(
            city="paris",
            syndrome="gastrointestinal",
            start=onset,
            duration_hours=24,
            multiplier=10.0,
        )
    ],
)

# The pipeline needs one classifier per syndrome; naive Bayes trained on
# the generator's own templates is plenty for a demo.
corpora = training_corpus(seed=1)
classifiers = {
    s: train_classifier(corpora[s], s, ClassifierSpec(kind="nb")) for s in SYNDROMES
}
pipeline = Pipeline(
    PipelineConfig(
        lexicon=default_lexicon(),
        blocklist=default_blocklist(),
        classifiers={s: c.predict_vector for s, c in classifiers.items()},
        vocabularies={s: c.vocab for s, c in classifiers.items()},
    )
)

t0 = time.perf_counter()
with tempfile.TemporaryDirectory() as tmp:
    with CountStore(tmp) as store:
        processed = accepted = 0
        for h in range(DAYS * 24):
            report = ingest_tick(
                start + timedelta(hours=h + 1), source, pipeline, registry, store
            )
            processed += report.processed
            accepted += report.accepted
        print(f"ingested {DAYS} days: {processed} messages, "
              f"{accepted} accepted ({time.perf_counter() - t0:.1f} s)")

        def band_at(city, syndrome, hour):
            window = store.baseline(city, syndrome, hour, history_days=14)
            return band(c2_score(window, float(store.count_at(city, syndrome, hour))))

        # Band timeline for the injected pair, six hours either side of
        # onset. Digits are the band; a dot is band 0.
        print(f"\noutbreak injected: paris / gastrointestinal, "
              f"{onset.isoformat()} for 24 h at 10x")
        strip = ""
        for h in range(-6, 30):
            b = band_at("paris", "gastrointestinal", onset + timedelta(hours=h))
            strip += str(b) if b else "."
        print("hour-by-hour bands (onset at ^):")
        print(f"  {strip}")
        print(f"  {' ' * 6}^")

        # Quiet pairs should stay at band 0 nearly all the time. Score
        # every (city, syndrome, hour) with a full baseline behind it,
        # skipping the outbreak window itself.
        alerts = quiet = 0
        hour = start + timedelta(days=14)
        while hour < start + timedelta(days=DAYS):
            for city in registry.names():
                for syndrome in SYNDROMES:
                    if (
                        city == "paris"
                        and syndrome == "gastrointestinal"
                        and onset <= hour < onset + timedelta(hours=24)
                    ):
                        continue
                    quiet += 1
                    if band_at(city, syndrome, hour) > 0:
                        alerts += 1
            hour += timedelta(hours=1)
        print(f"\nquiet triples above band 0: {alerts}/{quiet} "
              f"({100 * alerts / quiet:.1f}%)")
        print("the detector rides at its two-sigma false-alarm floor, about 5%")
        print("on this background rate, while the spike saturates the band scale.")
