"""HTTP service layer: pydantic request/response models and the FastAPI app."""
