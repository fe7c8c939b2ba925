use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::thread;
use std::time::Duration;

use roomcraft::extraction::{
    extract, ExtractionError, ExtractionProvider, Extractor, MockProvider, ProviderError, ProviderRequest, MAX_RETRIES, TEMPLATES,
};
use roomcraft_core::scene::RelationKind;

struct Garbage(AtomicUsize);

impl ExtractionProvider for Garbage {
    fn name(&self) -> &str {
        "garbage"
    }

    fn complete(&self, _: &ProviderRequest<'_>) -> Result<String, ProviderError> {
        self.0.fetch_add(1, Ordering::SeqCst);
        Ok("I would rather not.".into())
    }
}

struct Down;

impl ExtractionProvider for Down {
    fn name(&self) -> &str {
        "down"
    }

    fn complete(&self, _: &ProviderRequest<'_>) -> Result<String, ProviderError> {
        Err(ProviderError::Unavailable("connection refused".into()))
    }
}

/// Fails the first attempt of every template, then defers to the mock.
struct Flaky;

impl ExtractionProvider for Flaky {
    fn name(&self) -> &str {
        "flaky"
    }

    fn complete(&self, request: &ProviderRequest<'_>) -> Result<String, ProviderError> {
        if request.attempt == 0 {
            Ok("```\nnot json\n```".into())
        } else {
            MockProvider.complete(request).map(|s| format!("Sure! Here it is:\n```json\n{s}\n```"))
        }
    }
}

/// Records the peak number of concurrent calls.
struct Exclusive {
    active: AtomicUsize,
    peak: AtomicUsize,
}

impl ExtractionProvider for Exclusive {
    fn name(&self) -> &str {
        "exclusive"
    }

    fn exclusive(&self) -> bool {
        true
    }

    fn complete(&self, request: &ProviderRequest<'_>) -> Result<String, ProviderError> {
        let now = self.active.fetch_add(1, Ordering::SeqCst) + 1;
        self.peak.fetch_max(now, Ordering::SeqCst);
        thread::sleep(Duration::from_millis(2));
        self.active.fetch_sub(1, Ordering::SeqCst);
        MockProvider.complete(request)
    }
}

#[test]
fn unparseable_responses_fail_after_retries() {
    let extractor = Extractor::new(Garbage(AtomicUsize::new(0)));
    match extractor.extract("a bedroom with a bed", &[]) {
        Err(ExtractionError::ExtractionFailed { template, .. }) => assert_eq!(template, TEMPLATES[0].name.as_str()),
        other => panic!("{other:?}"),
    }
    assert_eq!(extractor.provider().0.load(Ordering::SeqCst), MAX_RETRIES as usize + 1);
}

#[test]
fn unavailable_provider_is_reported() {
    assert!(matches!(extract(Down, "a bedroom with a bed"), Err(ExtractionError::ProviderUnavailable(_))));
}

#[test]
fn retry_recovers_and_fenced_json_is_accepted() {
    let text = "A kitchen with a fridge against the east wall and a stove near the counter.";
    let flaky = extract(Flaky, text).unwrap();
    let direct = extract(MockProvider, text).unwrap();
    assert_eq!(flaky.organization, direct.organization);
    assert!(direct
        .organization
        .relations
        .iter()
        .any(|r| r.subject == "fridge" && r.relation == RelationKind::AgainstWall && r.object == "wall:east"));
}

#[test]
fn exclusive_provider_sees_one_request_at_a_time() {
    let extractor = Arc::new(Extractor::new(Exclusive {
        active: AtomicUsize::new(0),
        peak: AtomicUsize::new(0),
    }));
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let e = Arc::clone(&extractor);
            thread::spawn(move || e.extract("a bedroom with a bed and a lamp", &[]).unwrap())
        })
        .collect();
    for h in handles {
        h.join().unwrap();
    }
    assert_eq!(extractor.provider().peak.load(Ordering::SeqCst), 1);
}

#[test]
fn mock_extraction_is_deterministic() {
    let text = "An office with a desk against the west wall, a chair facing the desk and a bookshelf.";
    let a = extract(MockProvider, text).unwrap();
    let b = extract(MockProvider, text).unwrap();
    assert_eq!(a.organization, b.organization);
    assert_eq!(a.document, b.document);
}
