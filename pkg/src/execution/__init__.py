"""Strategy integration and wealth under temporary price impact"""
