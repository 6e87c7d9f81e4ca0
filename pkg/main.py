from weylwalk.main import app_factory

if __name__ == "__main__":
    import uvicorn

    uvicorn.run("weylwalk.main:app_factory", factory=True, host="0.0.0.0", port=8000, reload=True)
