use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use qegs_service::{router, Config};

fn pd() -> Value {
    json!({"rows": 2, "cols": 2, "parameter": null,
           "payoffs": [[["3","3"],["0","5"]],[["5","0"],["1","1"]]]})
}

fn g23() -> Value {
    json!({"payoffs": [[["3","1"],["2","3"],["2","0"]],[["-100","1"],["-100","2"],["3","3"]]]})
}

async fn call(method: &str, path: &str, body: Option<Value>) -> (StatusCode, Value, Vec<u8>) {
    let req = Request::builder()
        .method(method)
        .uri(path)
        .header("content-type", "application/json")
        .body(body.map_or_else(Body::empty, |b| Body::from(b.to_string())))
        .unwrap();
    let resp = router(&Config::default()).oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes().to_vec();
    let value = serde_json::from_slice(&bytes).unwrap_or(Value::Null);
    (status, value, bytes)
}

async fn post(path: &str, game: Value, options: Value) -> (StatusCode, Value) {
    let (s, v, _) = call("POST", path, Some(json!({"game": game, "options": options}))).await;
    (s, v)
}

fn error_code(v: &Value) -> &str {
    assert_eq!(v["ok"], false);
    v["error"]["code"].as_str().unwrap()
}

#[tokio::test]
async fn health() {
    let (status, v, _) = call("GET", "/api/v1/health", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["ok"], true);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

#[tokio::test]
async fn solve_prisoners_dilemma() {
    let (status, v) = post("/api/v1/solve", pd(), json!({"analysis": "ne"})).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v, json!({"ok": true, "result": {"ne": [[2, 2]]}}));
}

#[tokio::test]
async fn solve_maximin_of_the_two_by_three_game() {
    let (_, v) = post("/api/v1/solve", g23(), json!({"analysis": "maximin"})).await;
    assert_eq!(v["result"]["maximinRows"], json!([1]));
    assert_eq!(v["result"]["maximinCols"], json!([2]));
    assert_eq!(v["result"]["securityLevels"], json!(["2", "2"]));
}

#[tokio::test]
async fn parametric_solve_needs_a_value() {
    let (_, a1) = post("/api/v1/extend", pd(), json!({"class": "A1", "symbolic": true})).await;
    let game = a1["result"].clone();
    assert_eq!(game["parameter"], "a");
    let (status, v) = post("/api/v1/solve", game.clone(), json!({"analysis": "ne"})).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(error_code(&v), "INPUT_NOT_NUMERIC");
    let (_, v) = post("/api/v1/solve", game, json!({"analysis": "ne", "param": "65/100"})).await;
    assert_eq!(v["result"]["ne"], json!([[2, 3], [3, 2]]));
}

#[tokio::test]
async fn extend_a0() {
    let (status, v) = post("/api/v1/extend", pd(), json!({"class": "A0"})).await;
    assert_eq!(status, StatusCode::OK);
    let g = &v["result"];
    assert_eq!(g["rows"], 3);
    assert_eq!(g["payoffs"][2][0], json!(["4", "3/2"]));
    assert_eq!(g["payoffs"][2][2], json!(["9/4", "9/4"]));
    assert_eq!(g["rowLabels"], json!(["I", "iX", "U"]));
}

#[tokio::test]
async fn extend_rejects_non_square_games() {
    let (status, v) = post("/api/v1/extend", g23(), json!({"class": "A0"})).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(error_code(&v), "SIZE_NOT_2X2");
}

#[tokio::test]
async fn sweep_a1() {
    let (_, a1) = post("/api/v1/extend", pd(), json!({"class": "A1", "symbolic": true})).await;
    let (status, v) = post("/api/v1/sweep", a1["result"].clone(), json!({"analysis": "ne"})).await;
    assert_eq!(status, StatusCode::OK);
    let r = &v["result"];
    let breakpoints = r["breakpoints"].as_array().unwrap();
    let segments = r["segments"].as_array().unwrap();
    assert_eq!(segments.len(), 2 * breakpoints.len() + 1);
    let approx = |b: &Value| b["approx"].as_f64().unwrap();
    let containing = |x: f64| {
        segments
            .iter()
            .find(|s| s["kind"] == "interval" && approx(&s["from"]) < x && x < approx(&s["to"]))
            .unwrap()
    };
    assert_eq!(containing(0.28)["ne"], json!([]));
    assert_eq!(containing(0.65)["ne"], json!([[2, 3], [3, 2]]));
}

#[tokio::test]
async fn ewl_payoff_is_exact() {
    let options = json!({"u1": ["1/3", "1/2", "1"], "u2": "1/3,1/2,1"});
    let (status, v) = post("/api/v1/ewl", pd(), options).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["result"]["payoff"], json!(["43/16", "43/16"]));
    assert_eq!(v["result"]["weights"], json!(["9/16", "3/16", "3/16", "1/16"]));
    let radians = json!({"u1": [1.0, 0.5, 0.25], "u2": [0.0, 0.0, 0.0], "radians": true});
    let (_, v) = post("/api/v1/ewl", pd(), radians).await;
    assert_eq!(v["result"]["exact"], false);
}

#[tokio::test]
async fn error_catalog() {
    let (status, v, _) = call("POST", "/api/v1/solve", Some(json!("nonsense"))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(error_code(&v), "PARSE_ERROR");

    let req = Request::builder()
        .method("POST")
        .uri("/api/v1/solve")
        .body(Body::from("{not json"))
        .unwrap();
    let resp = router(&Config::default()).oneshot(req).await.unwrap();
    assert_eq!(resp.status(), StatusCode::BAD_REQUEST);

    let (_, v) = post("/api/v1/extend", pd(), json!({"class": "A1", "param": "3/2"})).await;
    assert_eq!(error_code(&v), "PARAM_ERROR");

    let big: Vec<Vec<Value>> = vec![vec![json!(["0", "0"]); 101]; 1];
    let (status, v) = post("/api/v1/solve", json!({"payoffs": big}), json!({})).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(error_code(&v), "PARAM_ERROR");
}

#[tokio::test]
async fn identical_requests_give_identical_bytes() {
    let body = json!({"game": pd(), "options": {"analysis": "all"}});
    let (_, _, a) = call("POST", "/api/v1/solve", Some(body.clone())).await;
    let (_, _, b) = call("POST", "/api/v1/solve", Some(body)).await;
    assert_eq!(a, b);
}

#[tokio::test]
async fn cors_preflight_is_answered() {
    let req = Request::builder()
        .method("OPTIONS")
        .uri("/api/v1/solve")
        .header("origin", "http://localhost:5173")
        .header("access-control-request-method", "POST")
        .body(Body::empty())
        .unwrap();
    let resp = router(&Config::default()).oneshot(req).await.unwrap();
    assert!(resp.headers().contains_key("access-control-allow-origin"));
}

#[tokio::test]
async fn ui_directory_is_served() {
    let dir = std::env::temp_dir().join(format!("qegs-ui-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("index.html"), "<h1>explorer</h1>").unwrap();
    let app = router(&Config { ui_dir: Some(dir.clone()) });
    let req = Request::builder().uri("/ui/index.html").body(Body::empty()).unwrap();
    let resp = app.oneshot(req).await.unwrap();
    assert_eq!(resp.status(), StatusCode::OK);
    let body = resp.into_body().collect().await.unwrap().to_bytes();
    assert_eq!(&body[..], b"<h1>explorer</h1>");
    std::fs::remove_dir_all(dir).unwrap();
}
