# FastAPI app module

